#include "minegame/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace minegame {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) {
      throw std::invalid_argument("bad exponent in number: " + std::string(text));
    }
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) {
    throw std::invalid_argument("not a number: " + std::string(text));
  }
  if ((!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part))) {
    throw std::invalid_argument("not a number: " + std::string(text));
  }
  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class numerator(digits.empty() ? "0" : digits, 10);
  exponent -= static_cast<long>(frac_part.size());
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational result;
  if (exponent >= 0) {
    result = Rational(numerator * scale);
  } else {
    result = Rational(numerator, scale);
    result.canonicalize();
  }
  return negative ? Rational(-result) : result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash));
    Rational den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    return Rational(num / den);
  }
  return parse_decimal(text);
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(value);  // mpq_set_d is exact
}

Rational approximate_rational(double value, std::int64_t max_denominator) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  if (max_denominator < 1) throw std::invalid_argument("max_denominator must be >= 1");
  const Rational exact = rational_from_double(value);
  // Convergents h/k of the continued fraction of the exact value.
  mpz_class h_prev = 0, h = 1, k_prev = 1, k = 0;
  Rational rest = exact;
  Rational best = Rational(0);
  bool have_best = false;
  for (int iter = 0; iter < 128; ++iter) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_denominator) {
      // Best semiconvergent between the last convergent and this one.
      mpz_class t = (mpz_class(max_denominator) - k_prev) / k;
      Rational semi(mpz_class(t * h + h_prev), mpz_class(t * k + k_prev));
      semi.canonicalize();
      if (!have_best || abs(semi - exact) < abs(best - exact)) best = semi;
      return best;
    }
    h_prev = h; h = h_next;
    k_prev = k; k = k_next;
    best = Rational(h, k);
    best.canonicalize();
    have_best = true;
    Rational frac = rest - Rational(a);
    if (frac == 0) return best;
    rest = 1 / frac;
  }
  return best;
}

double to_double(const Rational& value) { return value.get_d(); }

std::string to_fraction_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal_string(double value, int significant_digits) {
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, value);
  return buf;
}

std::string to_decimal_string(const Rational& value, int significant_digits) {
  return to_decimal_string(to_double(value), significant_digits);
}

}  // namespace minegame
