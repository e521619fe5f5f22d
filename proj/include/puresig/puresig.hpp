/*
 * Copyright 2026 The puresig Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PURESIG_PURESIG_HPP
#define PURESIG_PURESIG_HPP
#pragma once

#include "puresig/errors.hpp"
#include "puresig/scalar.hpp"
#include "puresig/word.hpp"
#include "puresig/tensor.hpp"
#include "puresig/tensor_json.hpp"
#include "puresig/linalg_exact.hpp"
#include "puresig/lie.hpp"
#include "puresig/lie_parse.hpp"
#include "puresig/signature.hpp"
#include "puresig/small_matrix.hpp"
#include "puresig/develop.hpp"
#include "puresig/presets.hpp"
#include "puresig/polysys.hpp"
#include "puresig/separate.hpp"
#include "puresig/hsfree.hpp"
#include "puresig/version.hpp"

#endif
