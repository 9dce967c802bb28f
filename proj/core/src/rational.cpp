#include "tsimp/rational.hpp"

#include <cctype>

#include "tsimp/error.hpp"

namespace tsimp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::NonManifoldVertex: return "NonManifoldVertex";
    case ErrorCode::CrossingEdges: return "CrossingEdges";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::UnusedVertex: return "UnusedVertex";
    case ErrorCode::BoundaryVertex: return "BoundaryVertex";
    case ErrorCode::BoundaryEdge: return "BoundaryEdge";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NotOnLink: return "NotOnLink";
    case ErrorCode::NonMonotoneFunction: return "NonMonotoneFunction";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::WrongDegree: return "WrongDegree";
    case ErrorCode::InvalidDiagonalSet: return "InvalidDiagonalSet";
    case ErrorCode::NonGenericEpsilon: return "NonGenericEpsilon";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::InfeasiblePlacement: return "InfeasiblePlacement";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::ParseError, "not an exact number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) bad(text);

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    std::string_view digits = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? num.substr(1) : num;
    if (!all_digits(digits) || !all_digits(den)) bad(text);
    Rational r(std::string(num[0] == '+' ? num.substr(1) : num) + "/" + std::string(den), 10);
    if (r.get_den() == 0) bad(text);
    r.canonicalize();
    return r;
  }

  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp = s.substr(e + 1);
    bool exp_neg = false;
    if (!exp.empty() && (exp[0] == '-' || exp[0] == '+')) {
      exp_neg = exp[0] == '-';
      exp.remove_prefix(1);
    }
    if (!all_digits(exp) || exp.size() > 6) bad(text);
    exponent = std::stol(std::string(exp));
    if (exp_neg) exponent = -exponent;
    s = s.substr(0, e);
  }

  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      bad(text);
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) bad(text);
    digits = std::string(s);
  }

  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

}  // namespace tsimp
