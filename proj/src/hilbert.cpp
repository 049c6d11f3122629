#include "charclass/hilbert.hpp"

#include <algorithm>
#include <map>

namespace charclass {

namespace {

using Poly = std::vector<std::int64_t>;

Poly multiply(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

void add_shifted(Poly& acc, const Poly& b, int shift) {
  if (acc.size() < b.size() + shift) acc.resize(b.size() + shift, 0);
  for (std::size_t j = 0; j < b.size(); ++j) acc[j + shift] += b[j];
}

bool divides(const Exponents& a, const Exponents& b, int n) {
  for (int i = 0; i < n; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

int total_degree(const Exponents& a, int n) {
  int d = 0;
  for (int i = 0; i < n; ++i) d += a[i];
  return d;
}

void minimalize(std::vector<Exponents>& gens, int n) {
  std::sort(gens.begin(), gens.end(),
            [n](const Exponents& a, const Exponents& b) { return total_degree(a, n) < total_degree(b, n); });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Exponents> out;
  for (const auto& g : gens) {
    if (std::none_of(out.begin(), out.end(), [&](const Exponents& h) { return divides(h, g, n); })) out.push_back(g);
  }
  gens = std::move(out);
}

class Numerator {
 public:
  explicit Numerator(int n) : n_(n) {}

  Poly operator()(std::vector<Exponents> gens) {
    minimalize(gens, n_);
    if (gens.empty()) return {1};
    std::sort(gens.begin(), gens.end());
    if (auto it = memo_.find(gens); it != memo_.end()) return it->second;

    Poly result = base_case(gens);
    if (result.empty()) result = split(gens);
    memo_.emplace(std::move(gens), result);
    return result;
  }

 private:
  // Pairwise coprime generators: product of (1 - t^deg).
  Poly base_case(const std::vector<Exponents>& gens) {
    std::vector<int> seen(n_, 0);
    for (const auto& g : gens)
      for (int i = 0; i < n_; ++i)
        if (g[i] > 0 && seen[i]++ > 0) return {};
    Poly r{1};
    for (const auto& g : gens) {
      Poly f(total_degree(g, n_) + 1, 0);
      f[0] += 1;
      f.back() -= 1;
      r = multiply(r, f);
    }
    return r;
  }

  // N(M) = N(M + (p)) + t^deg(p) N(M : p) for a pivot p = x_i^e taken
  // from a generator that is not a pure power, so both sides shrink.
  Poly split(const std::vector<Exponents>& gens) {
    auto mixed = [&](const Exponents& g) {
      int support = 0;
      for (int i = 0; i < n_; ++i) support += g[i] > 0;
      return support > 1;
    };
    int var = 0, best = -1;
    for (int i = 0; i < n_; ++i) {
      int count = 0;
      for (const auto& g : gens) count += g[i] > 0 && mixed(g);
      if (count > best) {
        best = count;
        var = i;
      }
    }
    std::vector<std::uint16_t> exps;
    for (const auto& g : gens)
      if (g[var] > 0 && mixed(g)) exps.push_back(g[var]);
    std::nth_element(exps.begin(), exps.begin() + exps.size() / 2, exps.end());
    std::uint16_t e = exps[exps.size() / 2];

    Exponents pivot{};
    pivot[var] = e;
    std::vector<Exponents> sum{pivot};
    std::vector<Exponents> quot;
    for (const auto& g : gens) {
      if (g[var] < e) sum.push_back(g);
      Exponents q = g;
      q[var] = static_cast<std::uint16_t>(g[var] > e ? g[var] - e : 0);
      quot.push_back(q);
    }
    Poly r = (*this)(std::move(sum));
    add_shifted(r, (*this)(std::move(quot)), e);
    return r;
  }

  int n_;
  std::map<std::vector<Exponents>, Poly> memo_;
};

}  // namespace

std::vector<std::int64_t> hilbert_numerator(std::vector<Exponents> generators, int nvars) {
  Poly r = Numerator(nvars)(std::move(generators));
  while (r.size() > 1 && r.back() == 0) r.pop_back();
  return r;
}

SchemeStats stats_from_numerator(const std::vector<std::int64_t>& numerator, int nvars) {
  Poly q = numerator;
  if (std::all_of(q.begin(), q.end(), [](auto c) { return c == 0; })) return {};
  int mult = 0;
  // divide by (1 - t) while t = 1 is a root
  for (;;) {
    std::int64_t at_one = 0;
    for (auto c : q) at_one += c;
    if (at_one != 0) {
      return {nvars - mult - 1, at_one};
    }
    Poly next(q.size() - 1, 0);
    std::int64_t acc = 0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
      acc += q[i];
      next[i] = acc;
    }
    q = std::move(next);
    ++mult;
  }
}

}  // namespace charclass
