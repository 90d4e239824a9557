#pragma once

// Denominator sets P_N, fraction families R(S), product-set partitions with
// property O, the covering family of surjections, the uniqueness property and
// the alternating edge colouring used to pair up repeated denominators.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <nlohmann/json.hpp>

#include "radonlab/budget.hpp"
#include "radonlab/errors.hpp"
#include "radonlab/number_theory.hpp"

namespace radonlab {

using BigFloat = boost::multiprecision::cpp_bin_float_100;

struct IWConfig {
  double rho = 1.0;
  int D = 2;
  std::int64_t N = 1;
  std::int64_t small_N_cutoff = 1;  // P_N = {1..N} for N below this

  // Log-gap of 3^{2D N^{rho/2}} N <= e^{N^rho}: N^rho - 2D ln3 N^{rho/2} - ln N.
  static BigFloat threshold_gap(std::int64_t N, double rho, int D) {
    const BigFloat n(N), r(rho);
    const BigFloat u = boost::multiprecision::pow(n, r / 2);
    return u * u - 2 * BigFloat(D) * boost::multiprecision::log(BigFloat(3)) * u - boost::multiprecision::log(n);
  }

  // Least N0 such that the inequality holds for every N >= N0. In u = N^{rho/2}
  // the gap is u^2 - 2D ln3 u - (2/rho) ln u, increasing once u >= D ln3 + 1.
  static std::int64_t compute_cutoff(double rho, int D) {
    const double u_star = D * std::log(3.0) + 1.0;
    std::int64_t last_fail = 0;
    for (std::int64_t n = 1;; ++n) {
      const bool holds = threshold_gap(n, rho, D) >= 0;
      if (!holds) last_fail = n;
      if (holds && std::pow(static_cast<double>(n), rho / 2.0) >= u_star) break;
      if (n > 100000000) throw Error("IWConfig: cutoff search did not terminate");
    }
    return last_fail + 1;
  }

  static std::int64_t cached_cutoff(double rho, int D) {
    static std::mutex mu;
    static std::map<std::pair<double, int>, std::int64_t> cache;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(rho, D);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, compute_cutoff(rho, D)).first;
    return it->second;
  }

  static IWConfig make(std::int64_t N, double rho) {
    require(N >= 1, "IWConfig: N >= 1");
    require(rho > 0.0 && rho < 2.0, "IWConfig: rho must lie in (0, 2)");
    IWConfig c;
    c.rho = rho;
    c.D = static_cast<int>(std::ceil(2.0 / rho - 1e-15));
    c.N = N;
    c.small_N_cutoff = cached_cutoff(rho, c.D);
    return c;
  }

  bool small_branch() const { return N < small_N_cutoff; }
};

inline BigInt lcm_first_n(std::int64_t N) {
  require(N >= 1, "lcm_first_n: N >= 1");
  BigInt out = 1;
  for (auto p : primes_up_to(N)) {
    std::int64_t pe = p;
    while (pe <= N / p) pe *= p;
    out *= pe;
  }
  return out;
}

// Primes p with N^{rho/2} < p <= N.
inline std::vector<std::int64_t> large_primes(std::int64_t N, double rho) {
  const BigFloat root = boost::multiprecision::pow(BigFloat(N), BigFloat(rho) / 2);
  std::vector<std::int64_t> out;
  for (auto p : primes_up_to(N)) {
    const BigFloat diff = BigFloat(p) - root;
    if (diff > BigFloat("1e-60")) out.push_back(p);
  }
  return out;
}

struct DenominatorMember {
  BigInt value;
  BigInt divisor_part;      // divides Q0
  std::int64_t smooth_part;  // <= N, all prime factors large
};

class DenominatorSet {
 public:
  const IWConfig& config() const noexcept { return config_; }
  const BigInt& Q0() const noexcept { return q0_; }
  const std::vector<DenominatorMember>& members() const noexcept { return members_; }
  const std::vector<std::int64_t>& large_prime_set() const noexcept { return large_primes_; }
  std::size_t size() const noexcept { return members_.size(); }

  std::vector<BigInt> values() const {
    std::vector<BigInt> out;
    out.reserve(members_.size());
    for (const auto& m : members_) out.push_back(m.value);
    return out;
  }

  bool contains(const BigInt& q) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), q,
                               [](const DenominatorMember& m, const BigInt& v) { return m.value < v; });
    return it != members_.end() && it->value == q;
  }

  BigInt lcm() const {
    BigInt out = 1;
    for (const auto& m : members_)
      if (out % m.value != 0) out = big_lcm(out, m.value);
    return out;
  }

  friend DenominatorSet build_denominator_set(std::int64_t N, double rho, const Budget& budget);

 private:
  IWConfig config_;
  BigInt q0_ = 1;
  std::vector<std::int64_t> large_primes_;
  std::vector<DenominatorMember> members_;
};

inline DenominatorSet build_denominator_set(std::int64_t N, double rho, const Budget& budget = default_budget()) {
  DenominatorSet out;
  out.config_ = IWConfig::make(N, rho);
  out.large_primes_ = large_primes(N, rho);
  if (out.config_.small_branch()) {
    check_budget("denominators", static_cast<double>(N), budget.denominators);
    for (std::int64_t n = 1; n <= N; ++n) out.members_.push_back({BigInt(n), BigInt(n), 1});
    // Q0 is still reported for reference.
  }
  const std::set<std::int64_t> large(out.large_primes_.begin(), out.large_primes_.end());
  // Q0 = prod over small primes p of the largest power p^e <= N.
  std::vector<std::pair<std::int64_t, int>> q0_factors;
  BigInt q0 = 1;
  for (auto p : primes_up_to(N)) {
    if (large.count(p)) continue;
    std::int64_t pe = p;
    int e = 1;
    while (pe <= N / p) {
      pe *= p;
      ++e;
    }
    q0 *= pe;
    q0_factors.emplace_back(p, e);
  }
  out.q0_ = q0;
  if (out.config_.small_branch()) return out;

  // n <= N with all prime factors in the large set.
  std::vector<std::int64_t> smooth;
  const auto trial = primes_up_to(static_cast<std::int64_t>(std::sqrt(static_cast<double>(N))) + 1);
  for (std::int64_t n = 1; n <= N; ++n) {
    std::int64_t m = n;
    bool ok = true;
    for (auto p : trial) {
      if (p * p > n) break;
      if (m % p != 0) continue;
      if (!large.count(p)) {
        ok = false;
        break;
      }
      while (m % p == 0) m /= p;
    }
    if (ok && m > 1 && !large.count(m)) ok = false;
    if (ok) smooth.push_back(n);
  }
  double ndiv = 1;
  for (const auto& [p, e] : q0_factors) ndiv *= e + 1;
  check_budget("denominators", ndiv * static_cast<double>(smooth.size()), budget.denominators);
  std::vector<BigInt> divisors{BigInt(1)};
  for (const auto& [p, e] : q0_factors) {
    const std::size_t base = divisors.size();
    BigInt pw = 1;
    for (int i = 1; i <= e; ++i) {
      pw *= p;
      for (std::size_t j = 0; j < base; ++j) divisors.push_back(divisors[j] * pw);
    }
  }
  // Q0 has no large prime factors, so q = dv * s determines (dv, s): no duplicates.
  out.members_.reserve(divisors.size() * smooth.size());
  if (q0 * N < (BigInt(1) << 62)) {
    std::vector<std::array<std::int64_t, 3>> small;
    small.reserve(divisors.size() * smooth.size());
    for (const auto& dv : divisors) {
      const auto d = dv.convert_to<std::int64_t>();
      for (auto s : smooth) small.push_back({d * s, d, s});
    }
    std::sort(small.begin(), small.end());
    for (const auto& [v, d, s] : small) out.members_.push_back({BigInt(v), BigInt(d), s});
    return out;
  }
  for (const auto& dv : divisors)
    for (auto s : smooth) out.members_.push_back({dv * s, dv, s});
  std::sort(out.members_.begin(), out.members_.end(),
            [](const DenominatorMember& a, const DenominatorMember& b) { return a.value < b.value; });
  return out;
}

// ceil(e^{N^rho}) as a big integer (100-digit working precision, then ceil).
inline BigInt exp_ceiling(std::int64_t N, double rho) {
  const BigFloat x = boost::multiprecision::exp(boost::multiprecision::pow(BigFloat(N), BigFloat(rho)));
  return boost::multiprecision::ceil(x).convert_to<BigInt>();
}

struct DenominatorAudit {
  bool contains_first_n = false;     // {1..N} inside P_N
  bool below_sandwich_bound = false; // P_N inside {1..max(N, ceil(e^{N^rho}))}
  bool lcm_matches = false;          // lcm P_N = lcm(1..N)
  bool lcm_below_3N = false;         // lcm(1..N) <= 3^N
  bool witnesses_valid = false;      // q = q0 * s with q0 | Q0, s large-prime smooth, s <= N
};

inline DenominatorAudit audit_denominator_set(const DenominatorSet& set) {
  DenominatorAudit a;
  const auto N = set.config().N;
  a.contains_first_n = true;
  for (std::int64_t n = 1; n <= N; ++n)
    if (!set.contains(BigInt(n))) {
      a.contains_first_n = false;
      break;
    }
  const BigInt top = set.members().empty() ? BigInt(0) : set.members().back().value;
  BigInt cap = BigInt(N);
  // Compare in the log domain first; only materialize e^{N^rho} when it is close.
  const BigFloat log_top = top > 0 ? boost::multiprecision::log(BigFloat(top)) : BigFloat(0);
  const BigFloat bound_log = boost::multiprecision::pow(BigFloat(N), BigFloat(set.config().rho));
  if (top <= cap)
    a.below_sandwich_bound = true;
  else if (log_top < bound_log - 1)
    a.below_sandwich_bound = true;
  else
    a.below_sandwich_bound = top <= std::max(cap, exp_ceiling(N, set.config().rho));
  const BigInt l = lcm_first_n(N);
  a.lcm_matches = set.lcm() == l;
  a.lcm_below_3N = l <= big_pow(BigInt(3), static_cast<unsigned>(N));
  a.witnesses_valid = true;
  const std::set<std::int64_t> large(set.large_prime_set().begin(), set.large_prime_set().end());
  for (const auto& m : set.members()) {
    if (set.config().small_branch()) break;
    bool ok = m.value == m.divisor_part * m.smooth_part && set.Q0() % m.divisor_part == 0 && m.smooth_part >= 1 &&
              m.smooth_part <= N;
    if (ok)
      for (auto p : prime_divisors(m.smooth_part))
        if (!large.count(p)) ok = false;
    if (!ok) {
      a.witnesses_valid = false;
      break;
    }
  }
  return a;
}

// A_q = {a in {1..q}^d : gcd(q, a_1, ..., a_d) = 1}, lexicographic.
inline std::vector<std::vector<std::int64_t>> reduced_residues(std::int64_t q, int d,
                                                               double cap = default_budget().summands) {
  require(q >= 1 && d >= 1, "reduced_residues: need q >= 1, d >= 1");
  check_budget("summands", std::pow(static_cast<double>(q), d), cap);
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> a(static_cast<std::size_t>(d), 1);
  for (bool more = true; more;) {
    std::int64_t g = q;
    for (auto v : a) g = std::gcd(g, v);
    if (g == 1) out.push_back(a);
    more = false;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (++a[i] <= q) {
        more = true;
        break;
      }
      a[i] = 1;
    }
  }
  return out;
}

// A point of T^d with common denominator: canonical representative in [0,1)^d.
struct TorusFraction {
  std::vector<Rational> coords;
  friend bool operator==(const TorusFraction&, const TorusFraction&) = default;
  friend bool operator<(const TorusFraction& a, const TorusFraction& b) { return a.coords < b.coords; }
};

// R(S) = union over q in S of A_q / q, reduced mod 1 and deduplicated.
inline std::vector<TorusFraction> fraction_family(const std::vector<std::int64_t>& S, int d,
                                                  double cap = default_budget().denominators) {
  std::set<TorusFraction> out;
  for (auto q : S) {
    for (const auto& a : reduced_residues(q, d)) {
      TorusFraction f;
      for (auto v : a) f.coords.push_back(frac_rational(Rational(v, q)));
      out.insert(std::move(f));
      check_budget("denominators", static_cast<double>(out.size()), cap);
    }
  }
  return {out.begin(), out.end()};
}

// |R(S)| without enumeration: sum of Jordan totients.
inline BigInt fraction_family_size(const std::vector<BigInt>& S, unsigned d) {
  BigInt total = 0;
  for (const auto& q : S) {
    require(q <= BigInt(std::numeric_limits<std::int64_t>::max()), "fraction_family_size: q too large");
    total += jordan_totient(q.convert_to<std::int64_t>(), d);
  }
  return total;
}

// Maps V -> {1..k} stored as label vectors indexed by position in V.
struct SurjectionFamily {
  int k = 0;
  std::size_t v_size = 0;
  std::vector<std::vector<int>> functions;  // values in {1..k}
  std::uint64_t seed = 0;
  int attempts = 0;
  std::int64_t ceiling = 0;  // ceil((k^{k+1}/k!) ln|V|)
  bool exhaustive_audit = false;
  std::int64_t audited_subsets = 0;
};

namespace detail {

// Every k-subset E of {0..n-1} has some f with |f(E)| = k; exact or sampled.
inline bool covers(const std::vector<std::vector<int>>& fs, std::size_t n, int k, bool exhaustive,
                   std::mt19937_64& rng, std::int64_t& audited, std::int64_t samples = 100000) {
  std::vector<std::size_t> E(static_cast<std::size_t>(k));
  std::vector<char> seen(static_cast<std::size_t>(k) + 1);
  auto covered = [&]() {
    for (const auto& f : fs) {
      std::fill(seen.begin(), seen.end(), 0);
      bool inj = true;
      for (auto e : E) {
        if (seen[static_cast<std::size_t>(f[e])]) {
          inj = false;
          break;
        }
        seen[static_cast<std::size_t>(f[e])] = 1;
      }
      if (inj) return true;
    }
    return false;
  };
  audited = 0;
  if (exhaustive) {
    for (std::size_t i = 0; i < E.size(); ++i) E[i] = i;
    while (true) {
      ++audited;
      if (!covered()) return false;
      std::size_t i = E.size();
      while (i > 0 && E[i - 1] == n - E.size() + (i - 1)) --i;
      if (i == 0) break;
      ++E[i - 1];
      for (std::size_t j = i; j < E.size(); ++j) E[j] = E[j - 1] + 1;
    }
    return true;
  }
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::int64_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < E.size(); ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(pool[i], pool[pick(rng)]);
      E[i] = pool[i];
    }
    ++audited;
    if (!covered()) return false;
  }
  return true;
}

}  // namespace detail

// Functions f_1..f_r : V -> {1..k}, r <= ceil((k^{k+1}/k!) ln|V|), such that every
// k-subset of V is mapped injectively by some f_i. Non-surjective draws are dropped.
inline SurjectionFamily surjection_family(std::size_t v_size, int k, std::uint64_t seed = 0x5eed,
                                          int max_attempts = 1000) {
  require(k >= 1, "surjection_family: k >= 1");
  SurjectionFamily fam;
  fam.k = k;
  fam.v_size = v_size;
  fam.seed = seed;
  if (static_cast<std::size_t>(k) > v_size) return fam;  // no k-subsets
  if (k == 1) {
    fam.functions.push_back(std::vector<int>(v_size, 1));
    fam.ceiling = 1;
    fam.attempts = 1;
    return fam;
  }
  if (static_cast<std::size_t>(k) == v_size) {
    std::vector<int> f(v_size);
    std::iota(f.begin(), f.end(), 1);
    fam.functions.push_back(std::move(f));
    fam.ceiling = 1;
    fam.attempts = 1;
    return fam;
  }
  double kfact = 1;
  for (int i = 2; i <= k; ++i) kfact *= i;
  const double coef = std::pow(static_cast<double>(k), k + 1) / kfact;
  fam.ceiling = static_cast<std::int64_t>(std::ceil(coef * std::log(static_cast<double>(v_size))));
  const auto r = static_cast<std::size_t>(std::max<std::int64_t>(1, fam.ceiling));
  const double subsets = static_cast<double>(binomial_u64(static_cast<unsigned>(v_size), static_cast<unsigned>(k)));
  fam.exhaustive_audit = subsets <= 1e6;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> label(1, k);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<std::vector<int>> fs(r, std::vector<int>(v_size));
    for (auto& f : fs)
      for (auto& v : f) v = label(rng);
    std::int64_t audited = 0;
    if (!detail::covers(fs, v_size, k, fam.exhaustive_audit, rng, audited)) continue;
    fam.attempts = attempt;
    fam.audited_subsets = audited;
    for (auto& f : fs) {
      std::vector<char> hit(static_cast<std::size_t>(k) + 1, 0);
      for (int v : f) hit[static_cast<std::size_t>(v)] = 1;
      if (std::count(hit.begin() + 1, hit.end(), 1) == k) fam.functions.push_back(std::move(f));
    }
    return fam;
  }
  throw Error("surjection_family: retry budget exhausted");
}

// An element of Pi(V): distinct primes with exponents, sorted by prime.
struct PrimeProduct {
  std::vector<PrimePower> factors;
  BigInt value() const {
    BigInt v = 1;
    for (const auto& f : factors) v *= big_pow(BigInt(f.prime), f.exponent);
    return v;
  }
  friend bool operator==(const PrimeProduct&, const PrimeProduct&) = default;
  friend auto operator<=>(const PrimeProduct&, const PrimeProduct&) = default;
};

struct PropertyOPart {
  int k = 0;
  std::vector<int> gamma;                  // exponent pattern, length k
  std::size_t function_index = 0;          // which surjection produced it
  std::vector<std::vector<PrimePower>> S;  // S_1..S_k, pure prime powers
  std::vector<PrimeProduct> members;       // Lambda after first-wins filtering
};

// Pi(V) = union_{k=0}^{D} Pi_k(V), enumerated in (k, primes, exponents) order.
inline std::vector<PrimeProduct> enumerate_pi(const std::vector<std::int64_t>& V, int D,
                                              double cap = default_budget().denominators) {
  std::vector<PrimeProduct> out;
  out.push_back(PrimeProduct{});
  for (int k = 1; k <= D && static_cast<std::size_t>(k) <= V.size(); ++k) {
    const double est = static_cast<double>(binomial_u64(static_cast<unsigned>(V.size()), static_cast<unsigned>(k))) *
                       std::pow(static_cast<double>(D), k);
    check_budget("denominators", static_cast<double>(out.size()) + est, cap);
    std::vector<std::size_t> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<unsigned> ex(static_cast<std::size_t>(k), 1);
      while (true) {
        PrimeProduct pp;
        for (std::size_t j = 0; j < idx.size(); ++j) pp.factors.push_back({V[idx[j]], ex[j]});
        out.push_back(std::move(pp));
        std::size_t j = ex.size();
        while (j > 0 && ex[j - 1] == static_cast<unsigned>(D)) ex[--j] = 1;
        if (j == 0) break;
        ++ex[j - 1];
      }
      std::size_t i = idx.size();
      while (i > 0 && idx[i - 1] == V.size() - idx.size() + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

struct PartitionResult {
  IWConfig config;
  std::vector<std::int64_t> V;  // the large primes
  std::vector<PropertyOPart> parts;
  std::size_t covered = 0;      // |Pi(V)|
  std::vector<SurjectionFamily> families;  // index k-1
};

// Cover Pi(V) by the sets {p_1^{g_1}...p_k^{g_k} : f_i(p_j) = j}, then keep
// each element only in the first set that contains it; empty sets are dropped.
inline PartitionResult partition_property_O(std::int64_t N, double rho, std::uint64_t seed = 0x5eed) {
  require(N >= 2, "partition_property_O: N >= 2");
  PartitionResult res;
  res.config = IWConfig::make(N, rho);
  res.V = large_primes(N, rho);
  const int D = res.config.D;
  const auto all = enumerate_pi(res.V, D);
  res.covered = all.size();
  std::map<std::int64_t, std::size_t> pos;
  for (std::size_t i = 0; i < res.V.size(); ++i) pos[res.V[i]] = i;

  std::vector<PropertyOPart> cover;
  {
    PropertyOPart unit;
    unit.k = 0;
    cover.push_back(unit);
  }
  for (int k = 1; k <= D; ++k) {
    res.families.push_back(surjection_family(res.V.size(), k, seed + static_cast<std::uint64_t>(k)));
    const auto& fam = res.families.back();
    std::vector<int> g(static_cast<std::size_t>(k), 1);
    while (true) {
      for (std::size_t i = 0; i < fam.functions.size(); ++i) {
        PropertyOPart part;
        part.k = k;
        part.gamma = g;
        part.function_index = i;
        part.S.assign(static_cast<std::size_t>(k), {});
        for (std::size_t v = 0; v < res.V.size(); ++v) {
          const int label = fam.functions[i][v];
          part.S[static_cast<std::size_t>(label - 1)].push_back(
              {res.V[v], static_cast<unsigned>(g[static_cast<std::size_t>(label - 1)])});
        }
        cover.push_back(std::move(part));
      }
      std::size_t j = g.size();
      while (j > 0 && g[j - 1] == D) g[--j] = 1;
      if (j == 0) break;
      ++g[j - 1];
    }
  }

  // Membership test: element x lies in part (k, gamma, f_i) iff it has k
  // factors and, labelling each prime by f_i, the labels are 1..k with
  // exponent gamma_label.
  auto in_part = [&](const PrimeProduct& x, const PropertyOPart& part) {
    if (static_cast<int>(x.factors.size()) != part.k) return false;
    if (part.k == 0) return true;
    const auto& f = res.families[static_cast<std::size_t>(part.k - 1)].functions[part.function_index];
    std::vector<char> used(static_cast<std::size_t>(part.k) + 1, 0);
    for (const auto& pp : x.factors) {
      const int label = f[pos.at(pp.prime)];
      if (used[static_cast<std::size_t>(label)]) return false;
      used[static_cast<std::size_t>(label)] = 1;
      if (static_cast<int>(pp.exponent) != part.gamma[static_cast<std::size_t>(label - 1)]) return false;
    }
    return true;
  };

  // Parts are grouped by k, so only parts of the element's own k are scanned.
  std::vector<std::size_t> first_of_k(static_cast<std::size_t>(D) + 2, cover.size());
  for (std::size_t i = cover.size(); i-- > 0;) first_of_k[static_cast<std::size_t>(cover[i].k)] = i;
  for (const auto& x : all) {
    const auto kx = x.factors.size();
    bool placed = false;
    for (std::size_t i = first_of_k[kx]; i < cover.size() && cover[i].k == static_cast<int>(kx); ++i) {
      if (in_part(x, cover[i])) {
        cover[i].members.push_back(x);
        placed = true;
        break;
      }
    }
    if (!placed) throw Error("partition_property_O: element not covered by the construction");
  }
  for (auto& part : cover)
    if (!part.members.empty()) res.parts.push_back(std::move(part));
  return res;
}

struct PartitionAudit {
  bool exact_cover = false;       // every element of Pi(V) in exactly one part
  bool witnesses_valid = false;   // S_j pure prime powers, exponents <= D, pairwise coprime, Lambda in S_1...S_k
  std::size_t part_count = 0;
  std::size_t element_count = 0;
};

inline PartitionAudit audit_partition(const PartitionResult& res) {
  PartitionAudit a;
  a.part_count = res.parts.size();
  const auto all = enumerate_pi(res.V, res.config.D);
  a.element_count = all.size();
  std::map<PrimeProduct, int> seen;
  for (const auto& part : res.parts)
    for (const auto& m : part.members) ++seen[m];
  a.exact_cover = seen.size() == all.size();
  for (const auto& x : all) {
    auto it = seen.find(x);
    if (it == seen.end() || it->second != 1) a.exact_cover = false;
  }
  const std::set<std::int64_t> vset(res.V.begin(), res.V.end());
  a.witnesses_valid = true;
  for (const auto& part : res.parts) {
    if (static_cast<int>(part.S.size()) != part.k || part.k > res.config.D) a.witnesses_valid = false;
    std::set<std::int64_t> primes;
    std::map<std::int64_t, std::pair<std::size_t, unsigned>> where;  // prime -> (j, exponent)
    std::size_t total = 0;
    for (std::size_t j = 0; j < part.S.size(); ++j)
      for (const auto& pp : part.S[j]) {
        ++total;
        if (!vset.count(pp.prime) || pp.exponent < 1 || static_cast<int>(pp.exponent) > res.config.D)
          a.witnesses_valid = false;
        primes.insert(pp.prime);
        where[pp.prime] = {j, pp.exponent};
      }
    // Pure prime powers of distinct primes are pairwise coprime.
    if (primes.size() != total) a.witnesses_valid = false;
    for (const auto& m : part.members) {
      if (static_cast<int>(m.factors.size()) != part.k) {
        a.witnesses_valid = false;
        continue;
      }
      std::vector<char> used(part.S.size(), 0);
      for (const auto& pp : m.factors) {
        auto it = where.find(pp.prime);
        if (it == where.end() || it->second.second != pp.exponent || used[it->second.first]) {
          a.witnesses_valid = false;
          break;
        }
        used[it->second.first] = 1;
      }
    }
  }
  return a;
}

template <class T>
bool has_uniqueness_property(std::span<const T> seq) {
  std::map<T, int> count;
  for (const auto& v : seq) ++count[v];
  for (const auto& [v, c] : count)
    if (c == 1) return true;
  return false;
}

inline bool has_uniqueness_property(const std::vector<std::int64_t>& seq) {
  return has_uniqueness_property(std::span<const std::int64_t>(seq));
}

// Given pairs (x_j(0), x_j(1)) whose flattened sequence has no element of
// multiplicity one, returns kappa with {x_j(kappa_j)} = {x_j(1 - kappa_j)} as sets.
inline std::vector<int> kappa_coloring(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
  const std::size_t r = pairs.size();
  std::vector<std::int64_t> flat;
  for (const auto& [a, b] : pairs) {
    flat.push_back(a);
    flat.push_back(b);
  }
  require(!has_uniqueness_property(flat), "kappa_coloring: sequence has the uniqueness property");
  // Relabel to dense symbols, then split multiplicities down to exactly 2.
  std::map<std::int64_t, int> id;
  std::vector<int> sym(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) sym[i] = id.try_emplace(flat[i], static_cast<int>(id.size())).first->second;
  int next = static_cast<int>(id.size());
  while (true) {
    std::map<int, std::vector<std::size_t>> occ;
    for (std::size_t i = 0; i < sym.size(); ++i) occ[sym[i]].push_back(i);
    int four = -1;
    std::vector<int> threes;
    for (const auto& [s, o] : occ) {
      if (o.size() >= 4 && four < 0) four = s;
      if (o.size() >= 3) threes.push_back(s);
    }
    if (four >= 0) {
      const auto& o = occ[four];
      sym[o[0]] = next;
      sym[o[1]] = next;
      ++next;
      continue;
    }
    if (threes.size() >= 2) {
      sym[occ[threes[0]][0]] = next;
      sym[occ[threes[1]][0]] = next;
      ++next;
      continue;
    }
    if (!threes.empty()) throw Error("kappa_coloring: odd multiplicity left over");
    break;
  }
  // Each symbol now occurs exactly twice: the bipartite multigraph (pairs vs
  // symbols) is 2-regular, a disjoint union of even cycles. Colour alternately.
  std::vector<std::size_t> other(sym.size());
  {
    std::map<int, std::vector<std::size_t>> occ;
    for (std::size_t i = 0; i < sym.size(); ++i) occ[sym[i]].push_back(i);
    for (const auto& [s, o] : occ) {
      other[o[0]] = o[1];
      other[o[1]] = o[0];
    }
  }
  std::vector<int> kappa(r, -1);
  for (std::size_t start = 0; start < r; ++start) {
    if (kappa[start] >= 0) continue;
    std::size_t j = start;
    int red_side = 0;
    while (kappa[j] < 0) {
      kappa[j] = red_side;
      const std::size_t blue = 2 * j + static_cast<std::size_t>(1 - red_side);
      const std::size_t nxt = other[blue];  // must be red at its pair
      j = nxt / 2;
      red_side = static_cast<int>(nxt % 2);
    }
  }
  return kappa;
}

// True iff {x_j(kappa_j)} == {x_j(1 - kappa_j)} as sets.
inline bool kappa_sets_equal(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs,
                             const std::vector<int>& kappa) {
  std::set<std::int64_t> a, b;
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const auto& [x0, x1] = pairs[j];
    a.insert(kappa[j] == 0 ? x0 : x1);
    b.insert(kappa[j] == 0 ? x1 : x0);
  }
  return a == b;
}

struct LrCheck {
  Rational lhs, rhs;
  bool holds = false;
};

// (sum a)^r <= (r(r-1))^{r-1} sum a_i^r + 2 sum over ordered tuples of pairwise
// distinct indices of a_{i_1}...a_{i_r}; the tuple sum equals r! e_r(a).
inline LrCheck l1_lr_inequality_check(const std::vector<Rational>& a, int r) {
  require(r >= 1, "l1_lr_inequality_check: r >= 1");
  for (const auto& v : a) require(v >= 0, "l1_lr_inequality_check: entries must be nonnegative");
  Rational sum = 0, pow_sum = 0;
  for (const auto& v : a) {
    sum += v;
    Rational p = 1;
    for (int i = 0; i < r; ++i) p *= v;
    pow_sum += p;
  }
  std::vector<Rational> e(static_cast<std::size_t>(r) + 1, Rational(0));
  e[0] = 1;
  for (const auto& v : a)
    for (int j = r; j >= 1; --j) e[static_cast<std::size_t>(j)] += e[static_cast<std::size_t>(j - 1)] * v;
  Rational fact = 1;
  for (int i = 2; i <= r; ++i) fact *= i;
  const Rational distinct = fact * e[static_cast<std::size_t>(r)];
  Rational c = 1;
  for (int i = 0; i < r - 1; ++i) c *= Rational(r * (r - 1));
  LrCheck out;
  out.lhs = 1;
  for (int i = 0; i < r; ++i) out.lhs *= sum;
  out.rhs = c * pow_sum + 2 * distinct;
  out.holds = out.lhs <= out.rhs;
  return out;
}

// JSON form: {N, rho, D, small_N_cutoff, Q0 (decimal string), members, large_primes}.
inline nlohmann::json to_json(const DenominatorSet& set) {
  nlohmann::json j;
  j["N"] = set.config().N;
  j["rho"] = set.config().rho;
  j["D"] = set.config().D;
  j["small_N_cutoff"] = set.config().small_N_cutoff;
  j["small_branch"] = set.config().small_branch();
  j["Q0"] = set.Q0().str();
  j["large_primes"] = set.large_prime_set();
  nlohmann::json members = nlohmann::json::array();
  for (const auto& m : set.members()) {
    if (m.value <= BigInt(std::numeric_limits<std::uint64_t>::max()))
      members.push_back(m.value.convert_to<std::uint64_t>());
    else
      members.push_back(m.value.str());
  }
  j["members"] = members;
  return j;
}

inline nlohmann::json to_json(const PartitionResult& res) {
  nlohmann::json j;
  j["N"] = res.config.N;
  j["rho"] = res.config.rho;
  j["D"] = res.config.D;
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& p : res.parts) {
    nlohmann::json pj;
    pj["k"] = p.k;
    pj["gamma"] = p.gamma;
    pj["function_index"] = p.function_index;
    nlohmann::json S = nlohmann::json::array();
    for (const auto& s : p.S) {
      nlohmann::json sj = nlohmann::json::array();
      for (const auto& pp : s) sj.push_back(nlohmann::json::array({pp.prime, pp.exponent}));
      S.push_back(sj);
    }
    pj["S"] = S;
    nlohmann::json mem = nlohmann::json::array();
    for (const auto& m : p.members) mem.push_back(m.value().str());
    pj["members"] = mem;
    parts.push_back(pj);
  }
  j["parts"] = parts;
  return j;
}

}  // namespace radonlab
