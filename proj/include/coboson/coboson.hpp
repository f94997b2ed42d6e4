// Copyright 2026 The Coboson Authors
// SPDX-License-Identifier: Apache-2.0

// Umbrella header: composite-boson quality and condensability analysis.
//
// A coboson is described by its Schmidt distribution {lambda_n}
// (schmidt.hpp). The normalization sequence chi_N and every derived
// bosonic-quality indicator live in symfun.hpp; spectrum.hpp and
// majorization.hpp decide LOCC condensability of N such cobosons; and
// fock.hpp holds the exact second-quantized oracle used to validate
// all of it at small scale.

#pragma once

#include "coboson/errors.hpp"
#include "coboson/fock.hpp"
#include "coboson/io.hpp"
#include "coboson/log_real.hpp"
#include "coboson/majorization.hpp"
#include "coboson/numeric.hpp"
#include "coboson/schmidt.hpp"
#include "coboson/spectrum.hpp"
#include "coboson/symfun.hpp"
#include "coboson/zeta.hpp"
