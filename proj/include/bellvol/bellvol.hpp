// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bellvol/basis.hpp"
#include "bellvol/bigint.hpp"
#include "bellvol/classical.hpp"
#include "bellvol/correlators.hpp"
#include "bellvol/game.hpp"
#include "bellvol/quantum.hpp"
#include "bellvol/rng.hpp"
#include "bellvol/robustness.hpp"
#include "bellvol/verify.hpp"
#include "bellvol/version.hpp"
