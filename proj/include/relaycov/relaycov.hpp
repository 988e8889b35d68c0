// Copyright 2026 The relaycov Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "relaycov/analytic_bounds.hpp"
#include "relaycov/coverage.hpp"
#include "relaycov/error.hpp"
#include "relaycov/fading_mc.hpp"
#include "relaycov/geometry.hpp"
#include "relaycov/io_format.hpp"
#include "relaycov/parallel.hpp"
#include "relaycov/philox.hpp"
#include "relaycov/quartic.hpp"
#include "relaycov/rates.hpp"
#include "relaycov/svg.hpp"
#include "relaycov/verification.hpp"
