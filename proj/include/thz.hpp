// SPDX-License-Identifier: Apache-2.0
//
// thz-cnoma: cooperative NOMA link-level simulator for indoor THz-MISO downlinks
// Copyright (C) 2026 The thz-cnoma authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "thz/beamforming.hpp"
#include "thz/channel.hpp"
#include "thz/config.hpp"
#include "thz/io.hpp"
#include "thz/pairing.hpp"
#include "thz/power.hpp"
#include "thz/random.hpp"
#include "thz/scenario.hpp"
#include "thz/sim.hpp"
