#pragma once

// Umbrella header: the full library surface.

#include "oblock/block.hpp"
#include "oblock/cartan.hpp"
#include "oblock/cli.hpp"
#include "oblock/errors.hpp"
#include "oblock/kl.hpp"
#include "oblock/oracle.hpp"
#include "oblock/polynomial.hpp"
#include "oblock/render.hpp"
#include "oblock/tilting.hpp"
#include "oblock/version.hpp"
#include "oblock/weyl.hpp"
