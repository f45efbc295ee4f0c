#include "reflectron/angle.hpp"

#include <cctype>
#include <cstdlib>

#include "reflectron/errors.hpp"

namespace reflectron {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;

long double parse_number(const std::string& s, const std::string& token) {
  if (s.empty()) throw DomainError("invalid angle: " + token);
  char* end = nullptr;
  const long double v = std::strtold(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw DomainError("invalid angle: " + token);
  return v;
}

}  // namespace

double parse_angle(const std::string& token) {
  std::string s;
  for (char c : token)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
  const auto at = s.find("pi");
  if (at == std::string::npos) return static_cast<double>(parse_number(s, token));

  std::string head = s.substr(0, at);
  std::string tail = s.substr(at + 2);
  long double factor = 1.0L;
  if (head == "-") {
    factor = -1.0L;
  } else if (head == "+" || head.empty()) {
  } else {
    if (head.back() == '*') head.pop_back();
    factor = parse_number(head, token);
  }
  long double divisor = 1.0L;
  if (!tail.empty()) {
    if (tail.front() != '/') throw DomainError("invalid angle: " + token);
    divisor = parse_number(tail.substr(1), token);
    if (divisor == 0.0L) throw DomainError("invalid angle: " + token);
  }
  return static_cast<double>(factor * kPi / divisor);
}

}  // namespace reflectron
