// SPDX-License-Identifier: Apache-2.0
//
// Part of etamu: performance analysis of eta-mu fading channels under
// additive white generalized Gaussian noise.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License.  You may obtain
// a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "etamu/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace etamu {

namespace {

// Largest finite natural log of a double, with a little slack.
constexpr double kLnDoubleMax = 709.78;

// Arguments below this use the ascending Bessel series; the series sum
// stays below e^x and the double range up to here.
constexpr double kBesselSeriesCutoff = 705.0;

[[noreturn]] void throw_domain(const std::string& fn, const std::string& msg) {
  throw std::domain_error(fn + ": " + msg);
}

bool is_nonpositive_integer(double v, long long* n) {
  if (v > 0.25) return false;
  const double r = std::nearbyint(v);
  if (std::abs(v - r) > 1e-9 * (1.0 + std::abs(v))) return false;
  *n = static_cast<long long>(r);
  return true;
}

// e^-x I_{n+1/2}(x) for integer n >= 0 through the exact finite form
//   I_{n+1/2}(x) = (2 pi x)^{-1/2} [ e^x  S(-1/x) - (-1)^n e^-x S(1/x) ],
//   S(t) = sum_{k=0}^{n} a_k t^k,  a_k = (n+k)! / (2^k k! (n-k)!).
// Intended for large x where the ascending series would overflow; computed
// in long double since S(-1/x) is mildly alternating.
long double bessel_half_integer_scaled(long long n, long double x) {
  long double a = 1.0L;           // a_0
  long double sm = 1.0L;          // S(-1/x)
  long double sp = 1.0L;          // S(+1/x)
  long double tm = 1.0L;
  long double tp = 1.0L;
  for (long long k = 0; k < n; ++k) {
    a = a * static_cast<long double>((n + k + 1) * (n - k)) /
        (2.0L * static_cast<long double>(k + 1));
    tm = a;
    tp = a;
    for (long long j = 0; j <= k; ++j) {
      tm /= x;
      tp /= x;
    }
    sm += ((k + 1) % 2 == 0) ? tm : -tm;
    sp += tp;
  }
  const long double damp = std::exp(-2.0L * x);  // underflows to 0 for x > ~355
  const long double sign = (n % 2 == 0) ? 1.0L : -1.0L;
  return (sm - sign * damp * sp) / std::sqrt(2.0L * 3.14159265358979323846264338328L * x);
}

// Large-argument expansion of e^-x I_nu(x); valid when the first term
// already decreases, i.e. roughly x >> nu^2.
detail::SeriesEval<long double> bessel_asymptotic_scaled(long double nu, long double x) {
  detail::SeriesEval<long double> r;
  const long double mu4 = 4.0L * nu * nu;
  long double term = 1.0L;
  long double sum = 1.0L;
  long double prev = std::numeric_limits<long double>::max();
  for (unsigned k = 1; k <= 60; ++k) {
    const long double tk = 2.0L * static_cast<long double>(k) - 1.0L;
    term *= -(mu4 - tk * tk) / (8.0L * x * static_cast<long double>(k));
    if (std::abs(term) >= prev) {  // divergent tail reached
      r.converged = std::abs(term) < 1e-13L * std::abs(sum);
      break;
    }
    sum += term;
    prev = std::abs(term);
    r.terms = k;
    if (std::abs(term) < std::abs(sum) * 1e-19L) break;
  }
  r.value = sum / std::sqrt(2.0L * 3.14159265358979323846264338328L * x);
  return r;
}

struct ScaledBessel {
  long double value = 0.0L;
  bool converged = true;
  unsigned terms = 0;
};

// e^-x I_nu(x) for x > kBesselSeriesCutoff.
ScaledBessel bessel_scaled_large(double nu, double x) {
  ScaledBessel out;
  const double half_shift = nu - 0.5;
  const double nearest = std::nearbyint(half_shift);
  if (nearest >= 0.0 && std::abs(half_shift - nearest) < 1e-9) {
    const long long n = static_cast<long long>(nearest);
    out.value = bessel_half_integer_scaled(n, static_cast<long double>(x));
    out.terms = static_cast<unsigned>(n + 1);
    return out;
  }
  const auto asym = bessel_asymptotic_scaled(static_cast<long double>(nu),
                                             static_cast<long double>(x));
  out.value = asym.value;
  out.converged = asym.converged;
  out.terms = asym.terms;
  return out;
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw_domain("ln_gamma", "requires x > 0, got x=" + std::to_string(x));
  return std::lgamma(x);
}

EvalResult lower_inc_gamma_ex(double s, double x) {
  if (!(s > 0.0)) throw_domain("lower_inc_gamma", "requires s > 0, got s=" + std::to_string(s));
  if (x < 0.0) throw_domain("lower_inc_gamma", "requires x >= 0, got x=" + std::to_string(x));
  EvalResult r;
  if (x == 0.0) return r;
  bool conv = true;
  unsigned terms = 0;
  const long double ln_val =
      detail::ln_gamma_lower<long double>(static_cast<long double>(s),
                                          static_cast<long double>(x), &conv,
                                          &terms);
  r.converged = conv;
  r.terms_used = terms;
  if (ln_val > static_cast<long double>(kLnDoubleMax)) {
    throw std::overflow_error(
        "lower_inc_gamma: result overflows double for s=" + std::to_string(s) +
        ", x=" + std::to_string(x) + "; use ln_lower_inc_gamma");
  }
  r.value = static_cast<double>(std::exp(ln_val));
  return r;
}

double lower_inc_gamma(double s, double x) { return lower_inc_gamma_ex(s, x).value; }

double upper_inc_gamma(double s, double x) {
  if (!(s > 0.0)) throw_domain("upper_inc_gamma", "requires s > 0, got s=" + std::to_string(s));
  if (x < 0.0) throw_domain("upper_inc_gamma", "requires x >= 0, got x=" + std::to_string(x));
  const long double q = detail::gamma_q<long double>(static_cast<long double>(s),
                                                     static_cast<long double>(x));
  const long double ln_val = detail::lgamma_t(static_cast<long double>(s)) + std::log(q);
  if (ln_val > static_cast<long double>(kLnDoubleMax)) {
    throw std::overflow_error(
        "upper_inc_gamma: result overflows double for s=" + std::to_string(s) +
        ", x=" + std::to_string(x));
  }
  return static_cast<double>(std::exp(ln_val));
}

double reg_lower_inc_gamma(double s, double x) {
  if (!(s > 0.0)) throw_domain("reg_lower_inc_gamma", "requires s > 0, got s=" + std::to_string(s));
  if (x < 0.0) throw_domain("reg_lower_inc_gamma", "requires x >= 0, got x=" + std::to_string(x));
  return static_cast<double>(detail::gamma_p<long double>(static_cast<long double>(s),
                                                          static_cast<long double>(x)));
}

double reg_upper_inc_gamma(double s, double x) {
  if (!(s > 0.0)) throw_domain("reg_upper_inc_gamma", "requires s > 0, got s=" + std::to_string(s));
  if (x < 0.0) throw_domain("reg_upper_inc_gamma", "requires x >= 0, got x=" + std::to_string(x));
  return static_cast<double>(detail::gamma_q<long double>(static_cast<long double>(s),
                                                          static_cast<long double>(x)));
}

double ln_lower_inc_gamma(double s, double x) {
  if (!(s > 0.0)) throw_domain("ln_lower_inc_gamma", "requires s > 0, got s=" + std::to_string(s));
  if (x < 0.0) throw_domain("ln_lower_inc_gamma", "requires x >= 0, got x=" + std::to_string(x));
  return static_cast<double>(detail::ln_gamma_lower<long double>(
      static_cast<long double>(s), static_cast<long double>(x)));
}

EvalResult bessel_i_ex(double nu, double x) {
  if (nu < 0.0) throw_domain("bessel_i", "requires nu >= 0, got nu=" + std::to_string(nu));
  if (x < 0.0) throw_domain("bessel_i", "requires x >= 0, got x=" + std::to_string(x));
  EvalResult r;
  if (x == 0.0) {
    r.value = (nu == 0.0) ? 1.0 : 0.0;
    return r;
  }
  if (x <= kBesselSeriesCutoff) {
    const auto se = detail::bessel_ratio_series<long double>(
        static_cast<long double>(nu), static_cast<long double>(x));
    r.converged = se.converged;
    r.terms_used = se.terms;
    const long double ln_val = static_cast<long double>(nu) * std::log(static_cast<long double>(x) / 2.0L) -
                               detail::lgamma_t(static_cast<long double>(nu) + 1.0L) +
                               std::log(se.value);
    if (ln_val > static_cast<long double>(kLnDoubleMax)) {
      throw std::overflow_error("bessel_i: result overflows double for nu=" +
                                std::to_string(nu) + ", x=" + std::to_string(x) +
                                "; use bessel_i_scaled or ln_bessel_i");
    }
    r.value = static_cast<double>(std::exp(ln_val));
    return r;
  }
  const auto sc = bessel_scaled_large(nu, x);
  r.converged = sc.converged;
  r.terms_used = sc.terms;
  const long double ln_val = static_cast<long double>(x) + std::log(sc.value);
  if (ln_val > static_cast<long double>(kLnDoubleMax)) {
    throw std::overflow_error("bessel_i: result overflows double for nu=" +
                              std::to_string(nu) + ", x=" + std::to_string(x) +
                              "; use bessel_i_scaled or ln_bessel_i");
  }
  r.value = static_cast<double>(std::exp(ln_val));
  return r;
}

double bessel_i(double nu, double x) { return bessel_i_ex(nu, x).value; }

double bessel_i_scaled(double nu, double x) {
  if (nu < 0.0) throw_domain("bessel_i_scaled", "requires nu >= 0, got nu=" + std::to_string(nu));
  if (x < 0.0) throw_domain("bessel_i_scaled", "requires x >= 0, got x=" + std::to_string(x));
  if (x == 0.0) return (nu == 0.0) ? 1.0 : 0.0;
  if (x <= kBesselSeriesCutoff) {
    const auto se = detail::bessel_ratio_series<long double>(
        static_cast<long double>(nu), static_cast<long double>(x));
    const long double ln_val = static_cast<long double>(nu) * std::log(static_cast<long double>(x) / 2.0L) -
                               detail::lgamma_t(static_cast<long double>(nu) + 1.0L) +
                               std::log(se.value) - static_cast<long double>(x);
    return static_cast<double>(std::exp(ln_val));
  }
  return static_cast<double>(bessel_scaled_large(nu, x).value);
}

double ln_bessel_i(double nu, double x) {
  if (nu < 0.0) throw_domain("ln_bessel_i", "requires nu >= 0, got nu=" + std::to_string(nu));
  if (x < 0.0) throw_domain("ln_bessel_i", "requires x >= 0, got x=" + std::to_string(x));
  if (x == 0.0) {
    return (nu == 0.0) ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  if (x <= kBesselSeriesCutoff) {
    const auto se = detail::bessel_ratio_series<long double>(
        static_cast<long double>(nu), static_cast<long double>(x));
    return static_cast<double>(static_cast<long double>(nu) * std::log(static_cast<long double>(x) / 2.0L) -
                               detail::lgamma_t(static_cast<long double>(nu) + 1.0L) +
                               std::log(se.value));
  }
  const auto sc = bessel_scaled_large(nu, x);
  return static_cast<double>(static_cast<long double>(x) + std::log(sc.value));
}

EvalResult gauss_2f1_ex(double a, double b, double c, double z) {
  if (!(c > 0.0)) throw_domain("gauss_2f1", "requires c > 0, got c=" + std::to_string(c));
  if (z > 0.0) throw_domain("gauss_2f1", "requires z <= 0, got z=" + std::to_string(z));
  EvalResult r;
  r.value = 1.0;
  if (z == 0.0 || a == 0.0 || b == 0.0) return r;

  const long double la = a, lb = b, lc = c, lz = z;

  // Case 1: a or b is a nonpositive integer -> the defining series is a
  // polynomial, and for z <= 0 all of its terms are nonnegative.
  long long na = 0, nb = 0;
  const bool ta = is_nonpositive_integer(a, &na);
  const bool tb = is_nonpositive_integer(b, &nb);
  if (ta || tb) {
    const long long degree = ta && tb ? std::min(-na, -nb) : (ta ? -na : -nb);
    long double term = 1.0L, sum = 1.0L;
    for (long long n = 0; n < degree; ++n) {
      const long double ln = static_cast<long double>(n);
      term *= (la + ln) * (lb + ln) * lz / ((lc + ln) * (ln + 1.0L));
      sum += term;
    }
    r.value = static_cast<double>(sum);
    r.terms_used = static_cast<unsigned>(degree + 1);
    return r;
  }

  // Case 2: c-a or c-b is a nonpositive integer.  Swap so it is c-b, then
  // apply the Euler transformation
  //   2F1(a,b;c;z) = (1-z)^(c-a-b) 2F1(c-a, c-b; c; z),
  // whose right-hand series is a polynomial.  When c-a > 0 every term of
  // that polynomial is nonnegative for z <= 0, so the sum is
  // cancellation-free.
  long long nca = 0, ncb = 0;
  const bool tca = is_nonpositive_integer(c - a, &nca);
  const bool tcb = is_nonpositive_integer(c - b, &ncb);
  if (tca || tcb) {
    long double aa = la, bb = lb;
    long long deg;
    if (tcb && (!tca || -ncb <= -nca)) {
      deg = -ncb;
    } else {
      std::swap(aa, bb);
      deg = -nca;
    }
    const long double ca = lc - aa;  // > 0 unless both were nonpositive ints
    const long double cb = lc - bb;  // the nonpositive integer
    if (ca > 0.0L) {
      long double term = 1.0L, sum = 1.0L;
      for (long long n = 0; n < deg; ++n) {
        const long double ln = static_cast<long double>(n);
        term *= (ca + ln) * (cb + ln) * lz / ((lc + ln) * (ln + 1.0L));
        sum += term;
      }
      const long double pw = (lc - aa - bb) * std::log1p(-lz);
      r.value = static_cast<double>(std::exp(pw + std::log(sum)));
      r.terms_used = static_cast<unsigned>(deg + 1);
      return r;
    }
    // Both c-a and c-b nonpositive integers: fall back to the mapped
    // polynomial below (finite, mildly alternating, long double).
    const long double w = lz / (lz - 1.0L);
    long double term = 1.0L, sum = 1.0L;
    for (long long n = 0; n < deg; ++n) {
      const long double ln = static_cast<long double>(n);
      term *= (aa + ln) * (cb + ln) * w / ((lc + ln) * (ln + 1.0L));
      sum += term;
    }
    r.value = static_cast<double>(std::pow(1.0L - lz, -aa) * sum);
    r.terms_used = static_cast<unsigned>(deg + 1);
    return r;
  }

  // General case: map z in (-inf, 0) to w = z/(z-1) in (0, 1) where the
  // transformed series 2F1(a, c-b; c; w) converges linearly:
  //   2F1(a,b;c;z) = (1-z)^-a 2F1(a, c-b; c; w).
  // Order (a, b) so the slower-growing parameter multiplies the power.
  long double aa = la, bb = lb;
  if (std::abs(lc - lb) > std::abs(lc - la)) std::swap(aa, bb);
  const long double w = lz / (lz - 1.0L);
  long double term = 1.0L, sum = 1.0L;
  unsigned n = 0;
  for (; n < detail::kHyp2f1MaxIter; ++n) {
    const long double ln = static_cast<long double>(n);
    term *= (aa + ln) * (lc - bb + ln) * w / ((lc + ln) * (ln + 1.0L));
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-19L) break;
  }
  r.converged = n < detail::kHyp2f1MaxIter;
  r.terms_used = n;
  r.value = static_cast<double>(std::exp(-aa * std::log1p(-lz)) * sum);
  return r;
}

double gauss_2f1(double a, double b, double c, double z) { return gauss_2f1_ex(a, b, c, z).value; }

}  // namespace etamu
