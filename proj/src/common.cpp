// Copyright 2026 The sieve-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sievelab/common.hpp"

#include <cctype>

namespace sievelab {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw InvalidInput("empty rational literal");

  auto is_int = [](const std::string& v) {
    std::size_t i = (!v.empty() && (v[0] == '-' || v[0] == '+')) ? 1 : 0;
    if (i == v.size()) return false;
    for (; i < v.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
    return true;
  };
  auto strip_plus = [](std::string v) { return (!v.empty() && v[0] == '+') ? v.substr(1) : v; };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw InvalidInput("malformed rational '" + s + "'");
    mpz_class n(strip_plus(num), 10), d(strip_plus(den), 10);
    if (d == 0) throw InvalidInput("zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    std::string digits = ip;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits = digits.substr(1);
    if (digits.empty()) digits = "0";
    if (!is_int(digits) || (!fp.empty() && !is_int(fp)) || fp.find_first_of("+-") != std::string::npos)
      throw InvalidInput("malformed decimal '" + s + "'");
    mpz_class whole(digits + fp, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    Rational q(whole, scale);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  if (!is_int(s)) throw InvalidInput("malformed rational '" + s + "'");
  return Rational(mpz_class(strip_plus(s), 10));
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

std::string_view to_string(Support s) {
  return s == Support::Simplex ? "simplex" : "extended";
}

Support parse_support(std::string_view text) {
  if (text == "simplex") return Support::Simplex;
  if (text == "extended") return Support::Extended;
  throw InvalidInput("unknown support '" + std::string(text) + "' (expected simplex|extended)");
}

}  // namespace sievelab
