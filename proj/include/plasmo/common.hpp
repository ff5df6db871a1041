/*
 * include/plasmo/common.hpp
 *
 * This source file is part of the plasmo project
 *
 * Copyright 2026 The plasmo authors
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

#include <complex>
#include <stdexcept>
#include <string>

namespace plasmo {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286;
inline constexpr double kHcEvNm = 1239.84193;

enum class ErrorKind { InvalidArgument, Numerical };

// Thrown by every module; the C layer maps kind to a status code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_argument(const std::string& what) {
    throw Error(ErrorKind::InvalidArgument, what);
}
[[noreturn]] inline void fail_numerical(const std::string& what) {
    throw Error(ErrorKind::Numerical, what);
}

} // namespace plasmo
