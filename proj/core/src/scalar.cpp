#include "orbifold/scalar.hpp"

#include <cctype>

namespace orbifold {

namespace {

std::string strip(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

Rat parse_rational(const std::string& raw) {
  std::string s = strip(raw);
  if (!s.empty() && s[0] == '+') s = strip(s.substr(1));
  if (s.empty()) throw std::invalid_argument("scalar: empty rational");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(strip(s.substr(0, slash)));
    Int den(strip(s.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("scalar: zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("scalar: cannot parse rational '" + raw + "'");
  }
}

Quad parse_quad(const std::string& raw) {
  std::string s = strip(raw);
  auto sq = s.find("sqrt(");
  if (sq == std::string::npos) return Quad(parse_rational(s));

  auto close = s.find(')', sq);
  if (close == std::string::npos) throw std::invalid_argument("scalar: unterminated sqrt in '" + raw + "'");
  long long d = std::stoll(strip(s.substr(sq + 5, close - sq - 5)));
  if (strip(s.substr(close + 1)).size())
    throw std::invalid_argument("scalar: trailing text after sqrt in '" + raw + "'");

  // split "a +/- coef*sqrt(d)" at the sign that starts the sqrt term
  std::string head = s.substr(0, sq);
  if (!head.empty() && head.back() == '*') head.pop_back();
  // find the top-level separator: last '+'/'-' in head at position > 0
  // that is not part of the coefficient itself
  size_t sep = std::string::npos;
  int depth = 0;
  for (size_t i = head.size(); i-- > 0;) {
    char c = head[i];
    if (c == ')') ++depth;
    if (c == '(') --depth;
    if (depth == 0 && (c == '+' || c == '-') && i > 0) {
      char prev = head[i - 1];
      if (prev != '/' && prev != '+' && prev != '-' && prev != '*') {
        sep = i;
        break;
      }
    }
  }
  Rat a(0), b(1);
  std::string coef;
  if (sep == std::string::npos) {
    coef = strip(head);
  } else {
    a = parse_rational(head.substr(0, sep));
    coef = strip(head.substr(sep));  // sign included
  }
  if (coef.empty() || coef == "+")
    b = 1;
  else if (coef == "-")
    b = -1;
  else
    b = parse_rational(coef);
  return Quad(a, b, d);
}

}  // namespace orbifold
