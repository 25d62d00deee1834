/*
 * Copyright (C) 2026 The seaird authors
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
#ifndef SEAIRD_ERROR_HPP
#define SEAIRD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace seaird
{

/// Base class of every error thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user input: parameters out of range, bad configuration, inconsistent windows.
class ValidationError : public Error
{
public:
    using Error::Error;
};

/// Problems with observed data: unreadable CSV, missing days, degenerate series.
class DataError : public Error
{
public:
    using Error::Error;
};

/// Numerical failure inside the model or the solvers.
class NumericalError : public Error
{
public:
    using Error::Error;
};

/// The living population S+E+I+A+R is not positive, so the force of infection is undefined.
class DegenerateDenominatorError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

/// Step budget exhausted or a nonfinite state was produced.
class IntegrationError : public NumericalError
{
public:
    using NumericalError::NumericalError;
};

} // namespace seaird

#endif // SEAIRD_ERROR_HPP
