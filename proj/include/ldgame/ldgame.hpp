#pragma once

#include "ldgame/delegation.hpp"
#include "ldgame/equilibrium.hpp"
#include "ldgame/errors.hpp"
#include "ldgame/evaluation.hpp"
#include "ldgame/game.hpp"
#include "ldgame/harness.hpp"
#include "ldgame/instances.hpp"
#include "ldgame/optimization.hpp"
#include "ldgame/rng.hpp"
