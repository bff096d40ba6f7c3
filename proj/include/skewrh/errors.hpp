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

#pragma once

#include <stdexcept>
#include <string>

namespace skewrh {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SKEWRH_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

SKEWRH_DEFINE_ERROR(NonFiniteValue);
SKEWRH_DEFINE_ERROR(DimensionMismatch);
SKEWRH_DEFINE_ERROR(SingularMatrix);
SKEWRH_DEFINE_ERROR(NotSkewSymmetric);
SKEWRH_DEFINE_ERROR(OddDimension);
SKEWRH_DEFINE_ERROR(InvalidPotential);
SKEWRH_DEFINE_ERROR(NotInImage);
SKEWRH_DEFINE_ERROR(NoConvergence);
SKEWRH_DEFINE_ERROR(PointOnContour);
SKEWRH_DEFINE_ERROR(PointNearIntersection);
SKEWRH_DEFINE_ERROR(OutOfRange);
SKEWRH_DEFINE_ERROR(ConditioningFailure);
SKEWRH_DEFINE_ERROR(DenominatorVanishing);
SKEWRH_DEFINE_ERROR(ConfigInvalid);
SKEWRH_DEFINE_ERROR(IoFailure);

#undef SKEWRH_DEFINE_ERROR

}  // namespace skewrh
