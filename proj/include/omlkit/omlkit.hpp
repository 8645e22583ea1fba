#pragma once

#include "omlkit/born.hpp"
#include "omlkit/greechie.hpp"
#include "omlkit/kalmbach.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/peres.hpp"
#include "omlkit/polytope.hpp"
#include "omlkit/ray.hpp"
#include "omlkit/rational.hpp"
#include "omlkit/sqrt2.hpp"
#include "omlkit/states.hpp"
