/*
 * Copyright 2026 The skewrh Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @brief Umbrella header.
 */

#pragma once

#include "skewrh/errors.hpp"
#include "skewrh/numerics.hpp"
#include "skewrh/polynomial.hpp"
#include "skewrh/quadrature.hpp"
#include "skewrh/orthopoly.hpp"
#include "skewrh/skew.hpp"
#include "skewrh/rhp.hpp"
#include "skewrh/kernel.hpp"
#include "skewrh/toda.hpp"
#include "skewrh/io.hpp"
#include "skewrh/suites.hpp"
