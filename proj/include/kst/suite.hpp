#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kst/cyclo.hpp"
#include "kst/matcomb.hpp"
#include "kst/surject.hpp"

namespace kst {

using json = nlohmann::json;

struct SuiteConfig {
  std::string name = "small";
  std::size_t n_max = 3;
  int d_max = 4;              // weight check, h-series, matrices
  int d_max_integrality = 4;  // divided-power integrality
  int r_max = 2;
  int v1_max = 3;
  int m_max = 3;
  int k_max = 2;
  int a_max = 4;
  int alpha_min = -2;
  int alpha_max = 2;
  int root_max = 12;
  int random_pairs = 100;
  std::uint32_t seed = 20240601;

  static SuiteConfig small() { return SuiteConfig{}; }
  static SuiteConfig full() {
    SuiteConfig c;
    c.name = "full";
    c.d_max = 5;
    c.d_max_integrality = 5;
    c.r_max = 3;
    return c;
  }
};

struct CaseReport {
  explicit CaseReport(std::string case_id = {}) : id(std::move(case_id)) {}

  std::string id;
  json params = json::object();
  bool pass = false;
  std::optional<std::string> lhs, rhs, unit;
  std::string notes;

  json to_json() const {
    json j;
    j["id"] = id;
    j["params"] = params;
    j["pass"] = pass;
    j["lhs"] = lhs ? json(*lhs) : json(nullptr);
    j["rhs"] = rhs ? json(*rhs) : json(nullptr);
    j["unit"] = unit ? json(*unit) : json(nullptr);
    j["notes"] = notes;
    return j;
  }
};

inline json to_json(const Composition& v) { return v.parts(); }

// ---------------------------------------------------------------- weights

struct CandidateTally {
  explicit CandidateTally(std::string n = {}) : name(std::move(n)) {}

  std::string name;
  long passed = 0;
  long total = 0;
  bool all() const { return total > 0 && passed == total; }
  json to_json() const { return {{"name", name}, {"passed", passed}, {"total", total}}; }
};

inline json candidates_json(const std::vector<CandidateTally>& t) {
  json out = json::array();
  for (const auto& c : t) out.push_back(c.to_json());
  return out;
}

template <class T>
std::optional<T> unique_winner(const std::vector<T>& items, const std::vector<CandidateTally>& tallies) {
  std::optional<T> found;
  int count = 0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (tallies[k].all()) {
      found = items[k];
      ++count;
    }
  }
  return count == 1 ? found : std::nullopt;
}

struct WeightResolution {
  std::vector<CandidateTally> tallies;
  std::optional<IndexVariant> resolved;
};

inline void for_each_weight(std::size_t n_max, int d_max,
                            const std::function<void(const Composition&, std::size_t)>& f) {
  for (std::size_t n = 1; n <= n_max; ++n)
    for (int d = 0; d <= d_max; ++d)
      for (const auto& v : compositions(d, n))
        for (std::size_t j = 1; j <= n; ++j) f(v, j);
}

inline WeightResolution resolve_weights(std::size_t n_max, int d_max) {
  WeightResolution r;
  const auto variants = IndexVariant::all();
  for (const auto& iv : variants) {
    CandidateTally t{iv.name()};
    for_each_weight(n_max, d_max, [&](const Composition& v, std::size_t j) {
      ++t.total;
      t.passed += weight_constant_check(v, j, iv).pass;
    });
    r.tallies.push_back(t);
  }
  r.resolved = unique_winner(variants, r.tallies);
  return r;
}

// ---------------------------------------------------------------- h-series

struct HResolution {
  std::vector<std::pair<IndexVariant, NormVariant>> pairs;
  std::vector<CandidateTally> equal;     // h_image == h_closed
  std::vector<CandidateTally> integral;  // Laurent with denominators dividing r
  std::optional<std::pair<IndexVariant, NormVariant>> resolved;
};

inline HResolution resolve_hseries(std::size_t n_max, int d_max, int r_max) {
  HResolution h;
  for (const auto& iv : IndexVariant::all())
    for (const auto& nv : NormVariant::all()) {
      h.pairs.emplace_back(iv, nv);
      CandidateTally eq{iv.name() + ";" + nv.name()}, in{eq.name};
      for_each_weight(n_max, d_max, [&](const Composition& v, std::size_t j) {
        for (int r = -r_max; r <= r_max; ++r) {
          if (r == 0) continue;
          ++eq.total;
          ++in.total;
          try {
            const LaurentPoly img = h_image(v, j, r, iv, nv);
            in.passed += denominators_divide(img, r);
            eq.passed += img == h_closed(v, j, r, iv);
          } catch (const NotDivisible&) {
          }
        }
      });
      h.equal.push_back(eq);
      h.integral.push_back(in);
    }
  h.resolved = unique_winner(h.pairs, h.equal);
  return h;
}

// ---------------------------------------------------------------- kernel

struct E05Sweep {
  long total = 0;
  long unit_cases = 0;
  std::vector<std::string> units;  // distinct units, sorted
  bool unit_exact() const { return total > 0 && unit_cases == total; }
  bool uniform() const { return unit_exact() && units.size() == 1; }
};

inline void for_each_e05(int v1_max, int m_max, int k_max,
                         const std::function<void(GeneratorKind, const Composition&, int, int)>& f) {
  for (auto kind : {GeneratorKind::kE, GeneratorKind::kF})
    for (int v1 = 0; v1 <= v1_max; ++v1)
      for (int m = 1; m <= std::min(m_max, v1 + 1); ++m)
        for (int k = -k_max; k <= k_max; ++k) {
          const Composition v = kind == GeneratorKind::kE ? Composition({v1, 0}) : Composition({0, v1});
          f(kind, v, m, k);
        }
}

inline E05Sweep sweep_e05(KernelConvention conv, int v1_max, int m_max, int k_max) {
  E05Sweep s;
  for_each_e05(v1_max, m_max, k_max, [&](GeneratorKind kind, const Composition& v, int m, int k) {
    ++s.total;
    try {
      const E05Report r = verify_e05(kind, v, m, k, conv);
      if (r.unit) {
        ++s.unit_cases;
        const std::string u = to_string(*r.ratio);
        if (std::find(s.units.begin(), s.units.end(), u) == s.units.end()) s.units.push_back(u);
      }
    } catch (const Error&) {
    }
  });
  std::sort(s.units.begin(), s.units.end());
  return s;
}

struct KernelResolution {
  std::vector<KernelConvention> conventions;
  std::vector<E05Sweep> sweeps;
  std::optional<KernelConvention> resolved;  // unique unit-exact convention
  bool uniform = false;                      // and its unit is global
};

inline KernelResolution resolve_kernel(int v1_max, int m_max, int k_max) {
  KernelResolution r;
  r.conventions = all_kernel_conventions();
  int exact = 0;
  for (auto c : r.conventions) {
    r.sweeps.push_back(sweep_e05(c, v1_max, m_max, k_max));
    if (r.sweeps.back().unit_exact()) {
      r.resolved = c;
      ++exact;
    }
  }
  if (exact != 1) r.resolved.reset();
  if (r.resolved) {
    const auto idx = std::find(r.conventions.begin(), r.conventions.end(), *r.resolved) - r.conventions.begin();
    r.uniform = r.sweeps[static_cast<std::size_t>(idx)].uniform();
  }
  return r;
}

// ---------------------------------------------------------------- runners

struct Conventions {
  WeightResolution weights;
  HResolution hseries;
  KernelResolution kernel;

  // Convention used downstream when resolution is inconclusive.
  KernelConvention kernel_or_default() const { return kernel.resolved.value_or(KernelConvention::kRatio); }

  json to_json() const {
    json j;
    j["index_variant"] = {{"candidates", candidates_json(weights.tallies)},
                          {"resolved", weights.resolved ? json(weights.resolved->name()) : json(nullptr)}};
    json h;
    h["candidates_equal"] = candidates_json(hseries.equal);
    h["candidates_integral"] = candidates_json(hseries.integral);
    h["resolved"] = hseries.resolved
                        ? json(hseries.resolved->first.name() + ";" + hseries.resolved->second.name())
                        : json(nullptr);
    j["h_series"] = h;
    json k;
    json cands = json::array();
    for (std::size_t i = 0; i < kernel.conventions.size(); ++i) {
      const auto& s = kernel.sweeps[i];
      cands.push_back({{"name", to_string(kernel.conventions[i])},
                       {"total", s.total},
                       {"unit_cases", s.unit_cases},
                       {"units", s.units},
                       {"unit_exact", s.unit_exact()},
                       {"uniform", s.uniform()}});
    }
    k["candidates"] = cands;
    k["resolved"] = kernel.resolved ? json(to_string(*kernel.resolved)) : json(nullptr);
    k["uniform_unit"] = kernel.uniform;
    j["kernel"] = k;
    j["witness_unit"] = "1";
    j["symmetrization"] = "full-group sum S(y^alpha) = |Stab(alpha)| m_alpha";
    return j;
  }
};

inline Conventions resolve_conventions(const SuiteConfig& c) {
  return Conventions{resolve_weights(c.n_max, c.d_max), resolve_hseries(c.n_max, c.d_max, c.r_max),
                     resolve_kernel(c.v1_max, c.m_max, c.k_max)};
}

inline std::vector<CaseReport> resolution_cases(const Conventions& conv) {
  std::vector<CaseReport> out;
  CaseReport w{"weights/resolution"};
  w.pass = conv.weights.resolved.has_value();
  w.unit = conv.weights.resolved ? std::optional<std::string>(conv.weights.resolved->name()) : std::nullopt;
  w.notes = w.pass ? "unique index variant gives q^{v_j}" : "no index variant gives q^{v_j} on every weight";
  out.push_back(w);

  CaseReport h{"hseries/resolution"};
  h.pass = conv.hseries.resolved.has_value();
  h.notes = h.pass ? "unique (index, norm) pair reproduces the closed form"
                   : "no (index, norm) pair reproduces the closed form on every case";
  out.push_back(h);

  CaseReport hi{"hseries/integrality"};
  hi.pass = std::all_of(conv.hseries.integral.begin(), conv.hseries.integral.end(),
                        [](const CandidateTally& t) { return t.all(); });
  hi.notes = "h_image is Laurent with denominators dividing r under every variant";
  out.push_back(hi);

  CaseReport k{"kernel/resolution"};
  k.pass = conv.kernel.resolved.has_value();
  if (conv.kernel.resolved) k.unit = to_string(*conv.kernel.resolved);
  k.notes = "unique convention whose e05 ratios are all units";
  out.push_back(k);

  CaseReport ku{"e05/uniform-unit"};
  ku.pass = conv.kernel.uniform;
  if (conv.kernel.resolved) {
    const auto idx = static_cast<std::size_t>(
        std::find(conv.kernel.conventions.begin(), conv.kernel.conventions.end(), *conv.kernel.resolved) -
        conv.kernel.conventions.begin());
    ku.params["units"] = conv.kernel.sweeps[idx].units;
  }
  ku.notes = "one global unit across all (kind, v1, m, k)";
  out.push_back(ku);
  return out;
}

inline std::vector<CaseReport> run_matrices(std::size_t n_max, int d_max) {
  std::vector<CaseReport> out;
  for (std::size_t n = 1; n <= n_max; ++n)
    for (int d = 0; d <= d_max; ++d) {
      CaseReport c{"matrices/n" + std::to_string(n) + "/d" + std::to_string(d)};
      c.params = {{"n", n}, {"d", d}};
      long pairs = 0, agree = 0;
      for (const auto& v : compositions(d, n))
        for (const auto& w : compositions(d, n)) {
          ++pairs;
          agree += enumerate_matrices(v, w).size() == double_coset_count(v, w);
        }
      c.params["pairs"] = pairs;
      c.pass = agree == pairs;
      c.notes = std::to_string(agree) + "/" + std::to_string(pairs) + " pairs agree";
      out.push_back(c);
    }
  return out;
}

inline std::vector<CaseReport> run_e05(KernelConvention conv, int v1_max, int m_max, int k_max) {
  std::vector<CaseReport> out;
  for_each_e05(v1_max, m_max, k_max, [&](GeneratorKind kind, const Composition& v, int m, int k) {
    CaseReport c{"e05/" + to_string(kind) + "/v" + v.to_string() + "/m" + std::to_string(m) + "/k" +
                 std::to_string(k)};
    c.params = {{"kind", to_string(kind)}, {"v", to_json(v)}, {"m", m}, {"k", k}, {"kernel", to_string(conv)}};
    try {
      const E05Report r = verify_e05(kind, v, m, k, conv);
      c.lhs = to_string(r.lhs);
      c.rhs = to_string(r.rhs);
      if (r.ratio) c.unit = to_string(*r.ratio);
      c.pass = r.unit;
      c.notes = r.unit ? "ratio is a unit" : "ratio is not a unit";
    } catch (const Error& e) {
      c.notes = e.what();
    }
    out.push_back(c);
  });
  return out;
}

inline std::vector<CaseReport> run_integrality(KernelConvention conv, std::size_t n_max, int d_max, int m_max,
                                               int k_max) {
  std::vector<CaseReport> out;
  for (auto kind : {GeneratorKind::kE, GeneratorKind::kF})
    for (std::size_t n = 2; n <= n_max; ++n)
      for (int d = 0; d <= d_max; ++d)
        for (const auto& w : compositions(d, n))
          for (std::size_t i = 1; i < n; ++i)
            for (int m = 1; m <= m_max; ++m) {
              CaseReport c{"integrality/" + to_string(kind) + "/w" + w.to_string() + "/i" + std::to_string(i) +
                           "/m" + std::to_string(m)};
              c.params = {{"kind", to_string(kind)}, {"weight", to_json(w)}, {"i", i}, {"m", m}, {"k_max", k_max}};
              int ok = 0, zero = 0;
              for (int k = -k_max; k <= k_max; ++k) {
                try {
                  const KClass dp = phi_divided_power({kind, i, k, w}, m, conv);
                  ++ok;
                  zero += dp.is_zero();
                } catch (const NotDivisible& e) {
                  c.notes = e.what();
                }
              }
              c.pass = ok == 2 * k_max + 1;
              if (c.pass) c.notes = zero ? "zero image (weight out of range)" : "divisible by [m]!";
              out.push_back(c);
            }
  return out;
}

inline std::vector<CaseReport> run_top_formula(KernelConvention conv, std::size_t n_max, int d_max, int a_max,
                                               int k_max) {
  std::vector<CaseReport> out;
  std::vector<std::string> all_units;
  for (std::size_t n = 2; n <= n_max; ++n)
    for (int d = 0; d <= d_max; ++d)
      for (const auto& v : compositions(d, n))
        for (std::size_t i = 1; i < n; ++i)
          for (int a = 1; a <= a_max; ++a) {
            CaseReport c{"top-formula/v" + v.to_string() + "/i" + std::to_string(i) + "/a" + std::to_string(a)};
            c.params = {{"v", to_json(v)}, {"i", i}, {"a", a}, {"k_max", k_max}};
            std::vector<std::string> units;
            bool ok = true;
            for (int l = -k_max; l <= k_max; ++l) {
              const KClass dp = phi_divided_power(top_divided_power_label(i, l, a, v), a, conv);
              const auto ratio = try_divide(dp.element(), top_divided_power_formula(i, l, a, v));
              if (!ratio || !is_unit(*ratio)) {
                ok = false;
                continue;
              }
              const std::string u = to_string(*ratio);
              if (std::find(units.begin(), units.end(), u) == units.end()) units.push_back(u);
            }
            c.pass = ok && units.size() == 1;
            if (units.size() == 1) c.unit = units.front();
            c.notes = "ratio to the displayed top divided power, constant in the loop degree";
            for (const auto& u : units)
              if (std::find(all_units.begin(), all_units.end(), u) == all_units.end()) all_units.push_back(u);
            out.push_back(c);
          }
  std::sort(all_units.begin(), all_units.end());
  CaseReport g{"top-formula/global-unit"};
  g.params = {{"units", all_units}};
  g.pass = all_units.size() == 1;
  g.notes = "one unit across all (v, i, a)";
  out.push_back(g);
  return out;
}

inline std::vector<std::vector<int>> dominant_vectors(int a, int lo, int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(a));
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int mx) {
    if (pos == cur.size()) {
      out.push_back(cur);
      return;
    }
    for (int x = mx; x >= lo; --x) {
      cur[pos] = x;
      rec(pos + 1, x);
    }
  };
  rec(0, hi);
  return out;
}

inline std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

inline std::vector<CaseReport> run_e6(int a_max, int lo, int hi) {
  std::vector<CaseReport> out;
  for (int a = 1; a <= a_max; ++a)
    for (const auto& alpha : dominant_vectors(a, lo, hi)) {
      CaseReport c{"e6/alpha" + join(alpha)};
      c.params = {{"alpha", alpha}};
      const E6Report r = verify_e6(alpha);
      c.params["s"] = r.s;
      c.pass = r.pass;
      c.lhs = r.leading.get_str();
      c.rhs = r.expected.get_str();
      json norms = json::array();
      for (const auto& [g, nrm] : r.remainder_norms) norms.push_back({{"beta", g}, {"norm", nrm}});
      c.params["remainder"] = norms;
      c.params["norm"] = alpha_norm(alpha);
      c.notes = r.laurent ? "alpha coefficient vs (a-s)! |Stab(alpha)|" : "not a Laurent polynomial";
      out.push_back(c);
    }
  return out;
}

inline std::vector<CaseReport> run_witness(KernelConvention conv, int a_max, int lo, int hi) {
  std::vector<CaseReport> out;
  for (int a = 1; a <= a_max; ++a)
    for (const auto& alpha : dominant_vectors(a, lo, hi)) {
      CaseReport c{"witness/alpha" + join(alpha)};
      c.params = {{"alpha", alpha}, {"v", json::array({0, 0})}, {"i", 1}};
      try {
        const WitnessReport r = verify_witness(alpha, Composition({0, 0}), 1, conv);
        c.lhs = to_string(r.evaluated);
        c.rhs = to_string(r.target);
        if (r.unit) c.unit = to_string(*r.unit);
        c.pass = r.pass && r.unit && *r.unit == LaurentPoly(r.target.var_count(), 1);
        c.notes = r.norms_decrease ? "norms strictly decrease" : "norm descent violated";
      } catch (const Error& e) {
        c.notes = e.what();
      }
      out.push_back(c);
    }
  return out;
}

inline LaurentPoly random_laurent(std::mt19937& rng, std::size_t d) {
  std::uniform_int_distribution<int> terms(0, 4), ex(-2, 2), qe(-3, 3), num(-5, 5), den(1, 3);
  LaurentPoly f(d);
  const int t = terms(rng);
  for (int k = 0; k < t; ++k) {
    Exponents e(d + 1);
    for (std::size_t i = 0; i < d; ++i) e[i] = ex(rng);
    e[d] = qe(rng);
    Rational c(num(rng), den(rng));
    c.canonicalize();
    f.add_term(e, c);
  }
  return f;
}

inline std::vector<CaseReport> run_root_of_unity(KernelConvention conv, int root_max, int pairs,
                                                 std::uint32_t seed) {
  std::vector<CaseReport> out;
  {
    const RootOfUnityReport r = divided_power_nonvanishing(1, 0, Composition({0, 2}), 2, 4, conv);
    CaseReport c{"root-of-unity/E2-at-zeta4"};
    c.params = {{"i", 1}, {"k", 0}, {"weight", {0, 2}}, {"m_dp", 2}, {"m_root", 4}};
    c.pass = r.precondition && r.pass;
    c.notes = "[2]! -> 0 at zeta_4; the divided-power class survives";
    out.push_back(c);
  }
  {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dd(0, 3), mm(1, root_max);
    int ok = 0;
    for (int p = 0; p < pairs; ++p) {
      const std::size_t d = static_cast<std::size_t>(dd(rng));
      const int m = mm(rng);
      const LaurentPoly f = random_laurent(rng, d), g = random_laurent(rng, d);
      const bool add = specialize_at_root(f + g, m) == specialize_at_root(f, m) + specialize_at_root(g, m);
      const bool mul = specialize_at_root(f * g, m) == specialize_at_root(f, m) * specialize_at_root(g, m);
      ok += add && mul;
    }
    CaseReport c{"root-of-unity/homomorphism"};
    c.params = {{"pairs", pairs}, {"seed", seed}, {"root_max", root_max}};
    c.pass = ok == pairs;
    c.notes = std::to_string(ok) + "/" + std::to_string(pairs) + " random pairs";
    out.push_back(c);
  }
  {
    CaseReport c{"root-of-unity/factorial-vanishing"};
    c.params = {{"m_max", 3}, {"root_max", root_max}};
    bool ok = true;
    for (int m = 1; m <= 3; ++m)
      for (int r = 1; r <= root_max; ++r)
        ok = ok && specialize_at_root(q_factorial(m), r).is_zero() == q_factorial_vanishes(m, r);
    c.pass = ok;
    c.notes = "[m]! vanishes at zeta_r iff r | 2k for some k <= m and r > 2";
    out.push_back(c);
  }
  return out;
}

struct SuiteReport {
  json conventions;
  std::vector<CaseReport> cases;
  bool pass = false;

  json to_json() const {
    json j;
    j["conventions"] = conventions;
    json cs = json::array();
    for (const auto& c : cases) cs.push_back(c.to_json());
    j["cases"] = cs;
    j["pass"] = pass;
    return j;
  }
};

inline SuiteReport make_report(json conventions, std::vector<CaseReport> cases) {
  SuiteReport r{std::move(conventions), std::move(cases), false};
  r.pass = std::all_of(r.cases.begin(), r.cases.end(), [](const CaseReport& c) { return c.pass; });
  return r;
}

inline SuiteReport run_suite(const SuiteConfig& cfg) {
  const Conventions conv = resolve_conventions(cfg);
  const KernelConvention kc = conv.kernel_or_default();
  std::vector<CaseReport> cases = resolution_cases(conv);
  auto append = [&](std::vector<CaseReport> more) {
    for (auto& c : more) cases.push_back(std::move(c));
  };
  append(run_matrices(cfg.n_max, cfg.d_max));
  append(run_e05(kc, cfg.v1_max, cfg.m_max, cfg.k_max));
  append(run_integrality(kc, cfg.n_max, cfg.d_max_integrality, cfg.m_max, cfg.k_max));
  append(run_top_formula(kc, cfg.n_max, 2, cfg.m_max, cfg.k_max));
  append(run_e6(cfg.a_max, cfg.alpha_min, cfg.alpha_max));
  append(run_witness(kc, cfg.a_max, cfg.alpha_min, cfg.alpha_max));
  append(run_root_of_unity(kc, cfg.root_max, cfg.random_pairs, cfg.seed));
  json c = conv.to_json();
  c["suite"] = cfg.name;
  return make_report(std::move(c), std::move(cases));
}

}  // namespace kst
