// Copyright 2026 The advscene Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace advscene
{

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class GenerationFailed : public Error
{
public:
  using Error::Error;
};

class UnknownTarget : public Error
{
public:
  using Error::Error;
};

/// Malformed document. `field()` holds the dotted path of the offending field,
/// e.g. "agents[3].yaw_deg".
class ParseError : public Error
{
public:
  explicit ParseError(std::string field, const std::string & detail = "")
  : Error(detail.empty() ? "parse error at '" + field + "'"
                         : "parse error at '" + field + "': " + detail),
    field_(std::move(field))
  {
  }
  const std::string & field() const noexcept { return field_; }

private:
  std::string field_;
};

class InvariantViolation : public Error
{
public:
  using Error::Error;
};

class NoSensor : public Error
{
public:
  using Error::Error;
};

class EgoNotInCollab : public Error
{
public:
  using Error::Error;
};

class NonIntelligentMember : public Error
{
public:
  using Error::Error;
};

class EmptyCandidates : public Error
{
public:
  using Error::Error;
};

class NotEnoughAgents : public Error
{
public:
  using Error::Error;
};

class NotEnoughIntelligent : public Error
{
public:
  using Error::Error;
};

class EmptyFeasibleSet : public Error
{
public:
  using Error::Error;
};

class SingularKernel : public Error
{
public:
  using Error::Error;
};

class ConfigError : public Error
{
public:
  using Error::Error;
};

}  // namespace advscene
