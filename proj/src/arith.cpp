#include "expeq/arith.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>

namespace expeq {

namespace {

constexpr unsigned kTrialBound = 1u << 12;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialBound + 1, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kTrialBound; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned j = i * i; j <= kTrialBound; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_round(const Int& n, const Int& n_minus_1, const Int& d,
                        unsigned s, unsigned long base) {
  Int x;
  Int a = base;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Deterministic for n < 3.3e24 with the first twelve prime bases.
bool miller_rabin(const Int& n) {
  static constexpr std::array<unsigned long, 12> kBases = {
      2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  Int n_minus_1 = n - 1;
  Int d = n_minus_1;
  unsigned s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (unsigned long base : kBases) {
    if (n == base) return true;
    if (!miller_rabin_round(n, n_minus_1, d, s, base)) return false;
  }
  static const Int kDeterministicLimit("3317044064679887385961981");
  if (n < kDeterministicLimit) return true;
  return mpz_probab_prime_p(n.get_mpz_t(), 24) > 0;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or n on failure.
Int brent_rho(const Int& n, unsigned long c) {
  Int y = 2, x, ys, q = 1, g = 1, diff;
  constexpr std::uint64_t m = 64;
  std::uint64_t r = 1;
  auto step = [&](Int& v) {
    v = v * v + c;
    v %= n;
  };
  do {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    std::uint64_t k = 0;
    do {
      ys = y;
      std::uint64_t limit = std::min(m, r - k);
      for (std::uint64_t i = 0; i < limit; ++i) {
        step(y);
        diff = x - y;
        mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
        q = q * diff % n;
      }
      g = gcd(q, n);
      k += m;
    } while (k < r && g == 1);
    r *= 2;
  } while (g == 1);
  if (g == n) {
    do {
      step(ys);
      diff = x - ys;
      mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
      g = gcd(diff, n);
    } while (g == 1);
  }
  return g;
}

void split_into(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    PowerRep rep = primitive_power(n);
    std::vector<Int> base_primes;
    split_into(rep.base, base_primes);
    for (unsigned i = 0; i < rep.exponent; ++i)
      out.insert(out.end(), base_primes.begin(), base_primes.end());
    return;
  }
  for (unsigned long c = 1;; ++c) {
    Int d = brent_rho(n, c);
    if (d != n && d != 1) {
      split_into(d, out);
      split_into(n / d, out);
      return;
    }
  }
}

// Strips every prime shared with y from x; x ends at 1 iff P(x) is within P(y).
Int strip_common(Int x, const Int& y) {
  Int g;
  for (;;) {
    g = gcd(x, y);
    if (g == 1) return x;
    x /= g;
  }
}

Int power_sum(const Int& R, const Int& S, unsigned n, Sign sign) {
  return sign == Sign::minus ? Int(pow(R, n) - pow(S, n)) : Int(pow(R, n) + pow(S, n));
}

void require_coprime_ordered(const Int& R, const Int& S) {
  if (S < 1 || R <= S) throw ArgumentError("require R > S >= 1");
  if (gcd(R, S) != 1) throw ArgumentError("require gcd(R, S) = 1");
}

template <typename Mul>
LeastIndex least_index_loop(Mul&& mulmod, auto r, auto s, auto neg_s_target,
                            int eps, std::uint64_t cap) {
  auto rt = r;
  auto st = s;
  for (std::uint64_t t = 1; t <= cap; ++t) {
    bool equal = rt == st;
    if (eps == 0 && equal) return {IndexStatus::found, t};
    if (eps == 1) {
      if (rt == neg_s_target(st)) return {IndexStatus::found, t};
      // R^t == S^t: the ratio sequence has cycled without reaching -1.
      if (equal) return {IndexStatus::never, 0};
    }
    rt = mulmod(rt, r);
    st = mulmod(st, s);
  }
  return {IndexStatus::cap_exhausted, 0};
}

}  // namespace

Int Factored::recompose() const {
  Int out = 1;
  for (const auto& f : factors) out *= pow(f.prime, f.exponent);
  return out;
}

std::vector<Int> Factored::primes() const {
  std::vector<Int> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.prime);
  return out;
}

unsigned Factored::exponent_of(const Int& p) const {
  for (const auto& f : factors)
    if (f.prime == p) return f.exponent;
  return 0;
}

Int pow(const Int& base, unsigned long e) {
  Int out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

unsigned bit_length(const Int& n) {
  if (n == 0) return 0;
  return static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

Int gcd(const Int& a, const Int& b) {
  Int out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  for (unsigned p : small_primes()) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    if (Int(p) * p > n) return true;
  }
  return miller_rabin(n);
}

Factored factorize(const Int& n) {
  if (n <= 0) throw ArgumentError("factorize: input must be positive, got " + n.get_str());
  Factored out{n, {}};
  Int rest = n;
  for (unsigned p : small_primes()) {
    if (Int(p) * p > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) out.factors.push_back({Int(p), e});
  }
  if (rest > 1) {
    std::vector<Int> large;
    split_into(rest, large);
    std::sort(large.begin(), large.end());
    for (const auto& p : large) {
      if (!out.factors.empty() && out.factors.back().prime == p)
        ++out.factors.back().exponent;
      else
        out.factors.push_back({p, 1});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const PrimePower& l, const PrimePower& r) { return l.prime < r.prime; });
  return out;
}

std::vector<Int> prime_set(const Int& n) { return factorize(n).primes(); }

Int radical(const Int& n) {
  Int out = 1;
  for (const auto& p : prime_set(n)) out *= p;
  return out;
}

unsigned valuation(const Int& p, const Int& n) {
  if (!is_prime(p)) throw ArgumentError("valuation: " + p.get_str() + " is not prime");
  if (n == 0) throw ArgumentError("valuation: n must be nonzero");
  Int rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

std::optional<unsigned> as_power_of(const Int& base, const Int& n) {
  if (base < 2 || n < 1) return std::nullopt;
  Int rest;
  auto e = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), base.get_mpz_t());
  if (rest != 1 || e == 0) return std::nullopt;
  return static_cast<unsigned>(e);
}

std::vector<PowerRep> power_representations(const Int& n) {
  std::vector<PowerRep> out;
  if (n < 2) return out;
  out.push_back({n, 1});
  unsigned bits = bit_length(n);
  Int root;
  for (unsigned k = 2; k < bits; ++k) {
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) out.push_back({root, k});
  }
  return out;
}

PowerRep primitive_power(const Int& n) {
  auto reps = power_representations(n);
  if (reps.empty()) throw ArgumentError("primitive_power: n must be >= 2");
  return reps.back();
}

bool prime_support_subset(const Int& x, const Int& y) {
  if (x == 0 || y == 0) throw ArgumentError("prime_support_subset: zero argument");
  Int ax = abs(x), ay = abs(y);
  return strip_common(ax, ay) == 1;
}

LeastIndex least_index(const Int& R, const Int& S, const Int& M, int eps,
                       std::uint64_t cap) {
  require_coprime_ordered(R, S);
  if (M < 1) throw ArgumentError("least_index: M must be positive");
  if (eps != 0 && eps != 1) throw ArgumentError("least_index: eps must be 0 or 1");
  if (M == 1) return {IndexStatus::found, 1};
  // A prime of M dividing R (or S) divides exactly one of the two terms.
  if (gcd(R * S, M) != 1) return {IndexStatus::never, 0};

  if (mpz_fits_ulong_p(M.get_mpz_t()) && M < Int(1) << 63) {
    std::uint64_t m = M.get_ui();
    std::uint64_t r = Int(R % M).get_ui();
    std::uint64_t s = Int(S % M).get_ui();
    auto mulmod = [m](std::uint64_t a, std::uint64_t b) {
      return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
    };
    auto neg = [m](std::uint64_t v) { return v == 0 ? 0 : m - v; };
    return least_index_loop(mulmod, r, s, neg, eps, cap);
  }
  Int r = R % M, s = S % M;
  auto mulmod = [&M](const Int& a, const Int& b) -> Int { return a * b % M; };
  auto neg = [&M](const Int& v) -> Int { return v == 0 ? Int(0) : Int(M - v); };
  return least_index_loop(mulmod, r, s, neg, eps, cap);
}

LteOdd lte_odd(const Int& R, const Int& S, const Int& p, unsigned n1, unsigned n2) {
  require_coprime_ordered(R, S);
  if (p == 2 || !is_prime(p)) throw ArgumentError("lte_odd: p must be an odd prime");
  if (n1 == 0 || n2 % n1 != 0) throw ArgumentError("lte_odd: require n1 | n2");
  LteOdd out;
  out.v1 = valuation(p, pow(R, n1) - pow(S, n1));
  if (out.v1 == 0) throw ArgumentError("lte_odd: require p^v1 > 2 (p does not divide R^n1 - S^n1)");
  out.v2 = valuation(p, pow(R, n2) - pow(S, n2));
  if (out.v2 < out.v1) {
    out.divides = false;
    return out;
  }
  out.divides = mpz_divisible_p(Int(n2 / n1).get_mpz_t(), pow(p, out.v2 - out.v1).get_mpz_t()) != 0;
  return out;
}

TwoAdicProfile two_adic_profile(const Int& R, const Int& S, unsigned n1, unsigned n2) {
  require_coprime_ordered(R, S);
  if (mpz_even_p(R.get_mpz_t()) || mpz_even_p(S.get_mpz_t()))
    throw ArgumentError("two_adic_profile: R and S must be odd");
  if (n1 == 0 || n2 % n1 != 0) throw ArgumentError("two_adic_profile: require n1 | n2");
  Int two = 2;
  unsigned t = valuation(two, pow(R, n1) - pow(S, n1));
  unsigned u = valuation(two, pow(R, n1) + pow(S, n1));
  unsigned q = n2 / n1;
  if (q % 2 == 1) return {t, u};
  unsigned v = static_cast<unsigned>(__builtin_ctz(q));
  return {std::max(t, u) + v, 1};
}

std::vector<std::pair<unsigned, unsigned>> same_prime_set_scan(const Int& R, const Int& S,
                                                               unsigned n_max, Sign sign) {
  require_coprime_ordered(R, S);
  if (n_max < 2) throw ArgumentError("same_prime_set_scan: n_max must be >= 2");
  std::vector<Int> values(n_max + 1);
  for (unsigned n = 1; n <= n_max; ++n) values[n] = power_sum(R, S, n, sign);
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned n1 = 1; n1 <= n_max; ++n1) {
    for (unsigned n2 = n1 + 1; n2 <= n_max; ++n2) {
      // R^n - S^n can be 1 (R = S + 1, n = 1); P(1) is empty.
      if (values[n1] == 1) {
        if (values[n2] == 1) out.emplace_back(n1, n2);
        continue;
      }
      if (prime_support_subset(values[n2], values[n1])) out.emplace_back(n1, n2);
    }
  }
  return out;
}

}  // namespace expeq
