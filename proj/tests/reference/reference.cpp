#include "reference.hpp"

#include <algorithm>
#include <numeric>

namespace expeq::ref {

std::vector<Solution> enumerate(const Int& a, const Int& b, const Int& c, unsigned max_bits) {
  const Int limit = Int(1) << max_bits;
  std::vector<Solution> out;
  Int ax = a;
  for (unsigned x = 1; ax < limit; ++x, ax *= a) {
    Int by = b;
    for (unsigned y = 1; ax + by < limit; ++y, by *= b) {
      Int sum = ax + by, cz = c;
      unsigned z = 1;
      while (cz < sum) {
        cz *= c;
        ++z;
      }
      if (cz == sum) out.push_back({x, y, z});
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

unsigned valuation(u64 p, const Int& n) {
  Int m = n;
  unsigned v = 0;
  while (m != 0 && m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::optional<u64> least_index(u64 R, u64 S, u64 M, int eps, u64 cap) {
  u64 r = 1 % M, s = 1 % M;
  for (u64 t = 1; t <= cap; ++t) {
    r = r * (R % M) % M;
    s = s * (S % M) % M;
    u64 v = eps == 0 ? (r + M - s) % M : (r + s) % M;
    if (v == 0) return t;
  }
  return std::nullopt;
}

std::optional<SolvedSystem> solve_pair(const Shape53& s53, const Shape54& s54, u64 gamma_max) {
  if (s53.g != s54.g || s53.a1 != s54.a1 || s53.b1 != s54.b1 || s53.c1 != s54.c1) return {};
  if (s53.b1 == 1 || !s53.y1 || !s54.y2) return {};
  const bool unit = s53.a1 == 1;
  for (u64 gm = 1; gm <= gamma_max; ++gm) {
    SolvedSystem s;
    s.gamma = gm;
    s.y1 = *s53.y1;
    s.z1 = s53.z1;
    s.w1 = s53.w1;
    s.y2 = *s54.y2;
    s.z2 = s54.z2;
    s.w2 = s54.w2;
    if (s.z1 * gm % s.y1) continue;
    s.beta = s.z1 * gm / s.y1;
    if (unit) {
      s.alpha = 1;
      s.x1 = s.z1 * gm + s.w1;
      s.x2 = s.z2 * gm;
    } else {
      s.x1 = *s53.x1;
      s.x2 = *s54.x2;
      if (s.z2 * gm % s.x2) continue;
      s.alpha = s.z2 * gm / s.x2;
    }
    if (s.consistent()) return s;
  }
  return {};
}

namespace {

bool perfect_power(u64 n) {
  for (u64 b = 2; b * b <= n; ++b) {
    u64 v = b * b;
    while (v < n) v *= b;
    if (v == n) return true;
  }
  return false;
}

struct Side {
  Int c;
  unsigned z, w, x, y;
};

void roots(const Int& v, unsigned E, unsigned w, unsigned x, unsigned y, std::vector<Side>& out) {
  for (unsigned k = 1; k <= E; ++k) {
    Int r;
    if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), k) && r >= 2) out.push_back({r, k, w, x, y});
  }
}

}  // namespace

std::vector<Candidate> direct_search(const DirectBounds& b, unsigned max_bits) {
  std::vector<std::pair<NineTuple, Candidate>> found;
  const unsigned E = b.exp_max;
  for (u64 g = 2; g <= b.g_max; ++g) {
    if (perfect_power(g)) continue;
    for (u64 a1 = 1; a1 <= b.a1_max; ++a1) {
      if (std::gcd(g, a1) != 1) continue;
      for (u64 b1 = 2; b1 <= b.b1_max; ++b1) {
        if (std::gcd(b1, g) != 1 || std::gcd(b1, a1) != 1) continue;
        std::vector<Side> left, right;
        const unsigned xmax = a1 == 1 ? 1 : E;
        for (unsigned w = 1; w <= E; ++w)
          for (unsigned x = 1; x <= xmax; ++x)
            for (unsigned y = 1; y <= E; ++y) {
              Int G = pow(Int(g), w), A = pow(Int(a1), x), B = pow(Int(b1), y);
              roots(G * A + B, E, w, x, y, left);
              roots(A + G * B, E, w, x, y, right);
            }
        for (const auto& l : left)
          for (const auto& r : right) {
            if (l.c != r.c) continue;
            std::optional<unsigned> x1, x2;
            if (a1 != 1) {
              x1 = l.x;
              x2 = r.x;
            }
            Shape53 s53{Int(g), l.w, Int(a1), x1, Int(b1), l.y, l.c, l.z};
            Shape54 s54{Int(a1), x2, Int(g), r.w, Int(b1), r.y, r.c, r.z};
            auto sys = solve_pair(s53, s54);
            if (!sys) continue;
            NineTuple nine{pow(Int(g), sys->alpha) * a1, pow(Int(g), sys->beta) * b1,
                           pow(Int(g), sys->gamma) * l.c,
                           {unsigned(sys->x1), unsigned(sys->y1), unsigned(sys->z1)},
                           {unsigned(sys->x2), unsigned(sys->y2), unsigned(sys->z2)}};
            auto cand = verify_nine(nine, max_bits);
            if (cand.status == CandidateStatus::anomalous ||
                cand.status == CandidateStatus::family_member)
              found.push_back({normalize(nine), cand});
          }
      }
    }
  }
  std::sort(found.begin(), found.end(),
            [](const auto& l, const auto& r) { return nine_less(l.first, r.first); });
  std::vector<Candidate> out;
  for (std::size_t i = 0; i < found.size(); ++i)
    if (i == 0 || nine_less(found[i - 1].first, found[i].first)) out.push_back(found[i].second);
  return out;
}

}  // namespace expeq::ref
