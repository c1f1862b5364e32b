/*
   Copyright 2026 the dicritique authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

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

namespace dicritique {

enum class errc {
    syntax_error,
    unknown_variable,
    non_integer_exponent,
    zero_polynomial,
    wrong_order,
    degree_too_small,
    degenerate_input,
    not_a_base_point,
    non_rational_point,
    cap_exceeded,
    not_coprime,
    both_constant,
    not_monomial,
    shear_exhausted,
    division_by_zero,
    field_mismatch,
    bad_field,
    internal_error,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::syntax_error:         return "SyntaxError";
        case errc::unknown_variable:     return "UnknownVariable";
        case errc::non_integer_exponent: return "NonIntegerExponent";
        case errc::zero_polynomial:      return "ZeroPolynomial";
        case errc::wrong_order:          return "WrongOrder";
        case errc::degree_too_small:     return "DegreeTooSmall";
        case errc::degenerate_input:     return "DegenerateInput";
        case errc::not_a_base_point:     return "NotABasePoint";
        case errc::non_rational_point:   return "NonRationalPoint";
        case errc::cap_exceeded:         return "CapExceeded";
        case errc::not_coprime:          return "NotCoprime";
        case errc::both_constant:        return "BothConstant";
        case errc::not_monomial:         return "NotMonomial";
        case errc::shear_exhausted:      return "ShearExhausted";
        case errc::division_by_zero:     return "DivisionByZero";
        case errc::field_mismatch:       return "FieldMismatch";
        case errc::bad_field:            return "BadField";
        case errc::internal_error:       return "InternalError";
    }
    return "UnknownError";
}

class engine_error : public std::runtime_error {
  public:
    engine_error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

// parse errors carry the offset into the input text
class parse_error : public engine_error {
  public:
    parse_error(errc code, const std::string& msg, std::size_t position)
        : engine_error(code, msg + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) {
    throw engine_error(code, msg);
}

inline void require(bool cond, errc code, const std::string& msg) {
    if (!cond) raise(code, msg);
}

}  // namespace dicritique
