// Copyright 2026 The qnetsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qnetsim/config.hpp"
#include "qnetsim/detection.hpp"
#include "qnetsim/errors.hpp"
#include "qnetsim/experiment.hpp"
#include "qnetsim/kernel.hpp"
#include "qnetsim/links.hpp"
#include "qnetsim/optics.hpp"
#include "qnetsim/photon.hpp"
#include "qnetsim/protocols.hpp"
#include "qnetsim/qkd.hpp"
#include "qnetsim/qstate.hpp"
#include "qnetsim/results.hpp"
#include "qnetsim/rng.hpp"
#include "qnetsim/sources.hpp"
#include "qnetsim/teleport.hpp"
