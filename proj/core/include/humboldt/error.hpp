/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace humboldt {

// Base of every error the engine raises. code() is the stable identifier used
// on the REST surface and in CLI output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Malformed JSON text. path points at the innermost container being read.
class SyntaxError : public Error {
 public:
  SyntaxError(std::string path, std::size_t line, std::size_t column, const std::string& what)
      : Error("SyntaxError", what + " at " + std::to_string(line) + ":" + std::to_string(column) +
                                 (path.empty() ? "" : " (" + path + ")")),
        path_(std::move(path)),
        line_(line),
        column_(column) {}

  const std::string& path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string path_;
  std::size_t line_;
  std::size_t column_;
};

// Well-formed JSON that does not match the expected document shape.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error("SchemaError", path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class DuplicateIdError : public Error {
 public:
  explicit DuplicateIdError(std::string id)
      : Error("DuplicateId", "duplicate artifact id '" + id + "'"), id_(std::move(id)) {}

  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class UnknownBuiltinError : public Error {
 public:
  UnknownBuiltinError(const std::string& type, const std::string& name)
      : Error("UnknownBuiltin", "no built-in provider for (" + type + ", " + name + ")") {}
};

class ProviderUnavailableError : public Error {
 public:
  ProviderUnavailableError(std::string provider, const std::string& why)
      : Error("ProviderUnavailable", "provider '" + provider + "' unavailable: " + why),
        provider_(std::move(provider)) {}

  const std::string& provider() const noexcept { return provider_; }

 private:
  std::string provider_;
};

class RepresentationMismatchError : public Error {
 public:
  RepresentationMismatchError(const std::string& expected, const std::string& actual)
      : Error("RepresentationMismatch",
              "provider declared " + expected + " but returned " + actual) {}
};

class DanglingArtifactError : public Error {
 public:
  explicit DanglingArtifactError(std::string id)
      : Error("DanglingArtifact", "payload references unknown artifact '" + id + "'"),
        id_(std::move(id)) {}

  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

// Structurally invalid provider payload (wrong keys for the representation,
// cyclic hierarchy, non-finite coordinates).
class MalformedPayloadError : public Error {
 public:
  explicit MalformedPayloadError(const std::string& what) : Error("MalformedPayload", what) {}
};

class MissingInputError : public Error {
 public:
  MissingInputError(const std::string& provider, std::vector<std::string> slots);

  const std::vector<std::string>& slots() const noexcept { return slots_; }

 private:
  std::vector<std::string> slots_;
};

class LexError : public Error {
 public:
  LexError(std::size_t position, const std::string& what)
      : Error("LexError", what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected);

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

class UnknownProviderError : public Error {
 public:
  UnknownProviderError(const std::string& reference, std::vector<std::string> candidates);

  const std::vector<std::string>& candidates() const noexcept { return candidates_; }

 private:
  std::vector<std::string> candidates_;
};

class UnknownArtifactError : public Error {
 public:
  explicit UnknownArtifactError(const std::string& id)
      : Error("UnknownArtifact", "unknown artifact '" + id + "'") {}
};

class UnknownProviderReferenceError : public Error {
 public:
  explicit UnknownProviderReferenceError(const std::string& reference)
      : Error("UnknownProviderReference", "unknown provider reference '" + reference + "'") {}
};

class UnauthorizedScopeError : public Error {
 public:
  UnauthorizedScopeError(const std::string& role, const std::string& scope)
      : Error("UnauthorizedScope", "role '" + role + "' may not modify " + scope + " config") {}
};

}  // namespace humboldt
