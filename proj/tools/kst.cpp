// kst: verification harness for the K-theoretic generator images.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kst/suite.hpp"
#include "kst/witness_json.hpp"

namespace {

using kst::json;

// "a..b" or a single integer.
std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw kst::ParseError("bad range '" + s + "'");
  }
}

std::vector<int> parse_signed_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw kst::ParseError("bad integer list '" + s + "'");
    }
  }
  if (out.empty()) throw kst::ParseError("empty integer list");
  return out;
}

kst::IndexVariant parse_index_variant(const std::string& s) {
  for (const auto& v : kst::IndexVariant::all())
    if (v.name() == s) return v;
  throw kst::ParseError("unknown index variant '" + s + "'");
}

kst::NormVariant parse_norm_variant(const std::string& s) {
  for (const auto& v : kst::NormVariant::all())
    if (v.name() == s) return v;
  throw kst::ParseError("unknown norm variant '" + s + "'");
}

kst::GeneratorKind parse_kind(const std::string& s) {
  if (s == "E") return kst::GeneratorKind::kE;
  if (s == "F") return kst::GeneratorKind::kF;
  throw kst::ParseError("kind must be E or F");
}

void write_out(const json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw kst::Error("cannot open " + path);
  f << text;
}

void print_summary(const kst::SuiteReport& r, std::ostream& os) {
  std::map<std::string, std::pair<int, int>> groups;
  for (const auto& c : r.cases) {
    const std::string g = c.id.substr(0, c.id.find('/'));
    auto& [pass, total] = groups[g];
    ++total;
    pass += c.pass;
  }
  os << "group                 pass/total\n";
  for (const auto& [g, pt] : groups) {
    char line[80];
    std::snprintf(line, sizeof line, "%-20s  %5d/%-5d %s\n", g.c_str(), pt.first, pt.second,
                  pt.first == pt.second ? "ok" : "FAIL");
    os << line;
  }
  os << "overall: " << (r.pass ? "pass" : "FAIL") << "\n";
}

int finish(const kst::SuiteReport& r, const std::string& out) {
  write_out(r.to_json(), out);
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification harness for generator images in the K-theory convolution algebra"};
  app.require_subcommand(1);
  std::string out;

  auto* verify = app.add_subcommand("verify", "run one family of checks");
  verify->require_subcommand(1);

  // weights
  auto* weights = verify->add_subcommand("weights", "constant term of the Cartan series versus q^{v_j}");
  std::size_t n_max = 3;
  int d_max = 4;
  std::string variant_name;
  weights->add_option("--n-max", n_max, "largest number of blocks")->capture_default_str();
  weights->add_option("--d-max", d_max, "largest d")->capture_default_str();
  weights->add_option("--variant", variant_name, "index variant for the per-weight cases (default: resolved)");
  weights->add_option("--out", out, "output path (default stdout)");

  // hseries
  auto* hseries = verify->add_subcommand("hseries", "H_{j,r}/[r] images versus the closed form");
  int r_max = 2;
  std::string v_text, index_name, norm_name;
  std::size_t j_block = 1;
  int r_single = 0;
  hseries->add_option("--n-max", n_max)->capture_default_str();
  hseries->add_option("--d-max", d_max)->capture_default_str();
  hseries->add_option("--r-max", r_max)->capture_default_str();
  hseries->add_option("--v", v_text, "single weight, e.g. 1,1 (with --j and --r)");
  hseries->add_option("--j", j_block)->capture_default_str();
  hseries->add_option("--r", r_single);
  hseries->add_option("--index-variant", index_name);
  hseries->add_option("--norm-variant", norm_name);
  hseries->add_option("--out", out);

  // e05
  auto* e05 = verify->add_subcommand("e05", "ordered products of single-step classes versus the closed form");
  int v1 = -1, m = 0, v1_max = 3, m_max = 3;
  std::string k_range = "-2..2", kind_text, kernel_name;
  e05->add_option("--v1", v1, "active block size (default: sweep 0..v1-max)");
  e05->add_option("--m", m, "power (default: sweep 1..m-max)");
  e05->add_option("--k", k_range, "loop degree or range a..b")->capture_default_str();
  e05->add_option("--v1-max", v1_max)->capture_default_str();
  e05->add_option("--m-max", m_max)->capture_default_str();
  e05->add_option("--kind", kind_text, "E or F (default both)");
  e05->add_option("--kernel", kernel_name, "kernel convention (default: resolved)");
  e05->add_option("--out", out);

  // e6
  auto* e6 = verify->add_subcommand("e6", "structure of the P*Q expansion");
  std::string alpha_text;
  int a_max = 4, lo = -2, hi = 2;
  e6->add_option("--alpha", alpha_text, "dominant exponent vector (default: sweep)");
  e6->add_option("--a-max", a_max)->capture_default_str();
  e6->add_option("--min", lo)->capture_default_str();
  e6->add_option("--max", hi)->capture_default_str();
  e6->add_option("--out", out);

  // witness
  auto* witness = verify->add_subcommand("witness", "surjectivity witness for S(y^alpha)");
  int a_size = 0;
  std::string wv_text = "0,0", check_path;
  std::size_t i_block = 1;
  witness->add_option("--alpha", alpha_text, "dominant exponent vector (default: sweep)");
  witness->add_option("--a", a_size, "length of alpha (checked when given)");
  witness->add_option("--v", wv_text, "composition v of d - a")->capture_default_str();
  witness->add_option("--i", i_block)->capture_default_str();
  witness->add_option("--a-max", a_max)->capture_default_str();
  witness->add_option("--min", lo)->capture_default_str();
  witness->add_option("--max", hi)->capture_default_str();
  witness->add_option("--check", check_path, "re-evaluate a serialized witness against --alpha");
  witness->add_option("--kernel", kernel_name, "kernel convention (default: ratio)");
  witness->add_option("--out", out);

  // root-of-unity
  auto* root = verify->add_subcommand("root-of-unity", "specialization at a primitive root of unity");
  int m_dp = 2, m_root = 4, k_loop = 0, root_max = 12, pairs = 100;
  std::string weight_text = "0,2";
  root->add_option("--m-dp", m_dp)->capture_default_str();
  root->add_option("--m-root", m_root)->capture_default_str();
  root->add_option("--i", i_block)->capture_default_str();
  root->add_option("--k", k_loop)->capture_default_str();
  root->add_option("--weight", weight_text, "weight acted on")->capture_default_str();
  root->add_option("--root-max", root_max)->capture_default_str();
  root->add_option("--pairs", pairs, "random pairs for the homomorphism check")->capture_default_str();
  root->add_option("--out", out);

  // enum
  auto* enumerate = app.add_subcommand("enum", "enumerations");
  enumerate->require_subcommand(1);
  auto* matrices = enumerate->add_subcommand("matrices", "M(v, w) with the double-coset count");
  std::string mv_text, mw_text;
  matrices->add_option("--v", mv_text, "row sums")->required();
  matrices->add_option("--w", mw_text, "column sums")->required();
  matrices->add_option("--out", out);

  // suite
  auto* suite = app.add_subcommand("suite", "convention resolution followed by every sweep");
  std::string size = "small";
  suite->add_option("size", size, "small or full")->check(CLI::IsMember({"small", "full"}))->capture_default_str();
  suite->add_option("--out", out, "report path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (suite->parsed()) {
      const kst::SuiteConfig cfg = size == "full" ? kst::SuiteConfig::full() : kst::SuiteConfig::small();
      const kst::SuiteReport r = kst::run_suite(cfg);
      print_summary(r, out.empty() || out == "-" ? std::cerr : std::cout);
      return finish(r, out);
    }

    if (matrices->parsed()) {
      const kst::Composition v = kst::Composition::parse(mv_text), w = kst::Composition::parse(mw_text);
      const auto ms = kst::enumerate_matrices(v, w);
      json list = json::array();
      for (const auto& mm : ms) {
        json rows = json::array();
        for (std::size_t a = 1; a <= mm.n(); ++a) {
          json row = json::array();
          for (std::size_t b = 1; b <= mm.n(); ++b) row.push_back(mm.at(a, b));
          rows.push_back(row);
        }
        list.push_back(rows);
      }
      json j{{"v", v.parts()}, {"w", w.parts()}, {"count", ms.size()}, {"matrices", list}};
      bool pass = true;
      if (v.d() <= 7) {
        const auto dc = kst::double_coset_count(v, w);
        j["double_cosets"] = dc;
        pass = dc == ms.size();
      }
      j["pass"] = pass;
      write_out(j, out);
      return pass ? 0 : 1;
    }

    if (weights->parsed()) {
      const auto res = kst::resolve_weights(n_max, d_max);
      kst::Conventions c;
      c.weights = res;
      json conv;
      conv["index_variant"] = {{"candidates", kst::candidates_json(res.tallies)},
                               {"resolved", res.resolved ? json(res.resolved->name()) : json(nullptr)}};
      std::vector<kst::CaseReport> cases;
      kst::CaseReport rc{"weights/resolution"};
      rc.pass = res.resolved.has_value();
      rc.notes = rc.pass ? "unique index variant" : "no index variant gives q^{v_j} on every weight";
      cases.push_back(rc);
      const kst::IndexVariant iv = !variant_name.empty() ? parse_index_variant(variant_name)
                                                         : res.resolved.value_or(kst::IndexVariant{});
      kst::for_each_weight(n_max, d_max, [&](const kst::Composition& v, std::size_t j) {
        const auto w = kst::weight_constant_check(v, j, iv);
        kst::CaseReport cr{"weights/" + iv.name() + "/v" + v.to_string() + "/j" + std::to_string(j)};
        cr.params = {{"v", v.parts()}, {"j", j}, {"variant", iv.name()}};
        cr.pass = w.pass;
        cr.lhs = w.exponent ? "q^" + std::to_string(*w.exponent) : std::string("not a q-power");
        cr.rhs = "q^" + std::to_string(w.expected);
        cases.push_back(cr);
      });
      return finish(kst::make_report(conv, cases), out);
    }

    if (hseries->parsed()) {
      if (!v_text.empty()) {
        const kst::Composition v = kst::Composition::parse(v_text);
        if (r_single == 0) throw kst::InvalidArgument("--r must be nonzero");
        std::vector<kst::CaseReport> cases;
        for (const auto& iv : kst::IndexVariant::all()) {
          if (!index_name.empty() && iv.name() != index_name) continue;
          for (const auto& nv : kst::NormVariant::all()) {
            if (!norm_name.empty() && nv.name() != norm_name) continue;
            kst::CaseReport cr{"hseries/" + iv.name() + ";" + nv.name()};
            cr.params = {{"v", v.parts()}, {"j", j_block}, {"r", r_single}};
            try {
              const auto img = kst::h_image(v, j_block, r_single, iv, nv);
              const auto closed = kst::h_closed(v, j_block, r_single, iv);
              cr.lhs = kst::to_string(img);
              cr.rhs = kst::to_string(closed);
              cr.pass = img == closed;
              cr.notes = kst::denominators_divide(img, r_single) ? "integral" : "denominator does not divide r";
            } catch (const kst::NotDivisible& e) {
              cr.notes = e.what();
            }
            cases.push_back(cr);
          }
        }
        return finish(kst::make_report(json::object(), cases), out);
      }
      if (!index_name.empty()) parse_index_variant(index_name);
      if (!norm_name.empty()) parse_norm_variant(norm_name);
      kst::Conventions c;
      c.hseries = kst::resolve_hseries(n_max, d_max, r_max);
      auto all = kst::resolution_cases(c);
      std::vector<kst::CaseReport> cases(all.begin() + 1, all.begin() + 3);
      json conv = c.to_json();
      return finish(kst::make_report(json{{"h_series", conv["h_series"]}}, cases), out);
    }

    if (e05->parsed()) {
      kst::KernelResolution kr = kst::resolve_kernel(v1_max, m_max, 2);
      const kst::KernelConvention conv = !kernel_name.empty() ? kst::parse_kernel_convention(kernel_name)
                                                              : kr.resolved.value_or(kst::KernelConvention::kRatio);
      const auto [k_lo, k_hi] = parse_range(k_range);
      std::vector<kst::CaseReport> cases;
      std::vector<std::string> units;
      for (auto kind : {kst::GeneratorKind::kE, kst::GeneratorKind::kF}) {
        if (!kind_text.empty() && parse_kind(kind_text) != kind) continue;
        for (int a = v1 < 0 ? 0 : v1; a <= (v1 < 0 ? v1_max : v1); ++a)
          for (int mm = m > 0 ? m : 1; mm <= (m > 0 ? m : std::min(m_max, a + 1)); ++mm)
            for (int k = k_lo; k <= k_hi; ++k) {
              const kst::Composition v = kind == kst::GeneratorKind::kE ? kst::Composition({a, 0})
                                                                        : kst::Composition({0, a});
              kst::CaseReport cr{"e05/" + kst::to_string(kind) + "/v" + v.to_string() + "/m" + std::to_string(mm) +
                                 "/k" + std::to_string(k)};
              cr.params = {{"kind", kst::to_string(kind)}, {"v", v.parts()}, {"m", mm}, {"k", k},
                           {"kernel", kst::to_string(conv)}};
              try {
                const auto r = kst::verify_e05(kind, v, mm, k, conv);
                cr.lhs = kst::to_string(r.lhs);
                cr.rhs = kst::to_string(r.rhs);
                if (r.ratio) cr.unit = kst::to_string(*r.ratio);
                cr.pass = r.unit;
                if (r.unit && std::find(units.begin(), units.end(), *cr.unit) == units.end()) units.push_back(*cr.unit);
              } catch (const kst::Error& e) {
                cr.notes = e.what();
              }
              cases.push_back(cr);
            }
      }
      std::sort(units.begin(), units.end());
      kst::CaseReport u{"e05/uniform-unit"};
      u.params = {{"units", units}};
      u.pass = units.size() == 1;
      u.notes = "one unit across the listed cases";
      cases.push_back(u);
      kst::Conventions c;
      c.kernel = kr;
      json convj = c.to_json();
      return finish(kst::make_report(json{{"kernel", convj["kernel"]}}, cases), out);
    }

    if (e6->parsed()) {
      std::vector<kst::CaseReport> cases;
      if (!alpha_text.empty()) {
        const auto alpha = parse_signed_ints(alpha_text);
        const auto r = kst::verify_e6(alpha);
        kst::CaseReport cr{"e6/alpha" + kst::join(alpha)};
        json norms = json::array();
        for (const auto& [g, nrm] : r.remainder_norms) norms.push_back({{"beta", g}, {"norm", nrm}});
        cr.params = {{"alpha", alpha}, {"s", r.s}, {"norm", kst::alpha_norm(alpha)}, {"remainder", norms}};
        cr.lhs = r.leading.get_str();
        cr.rhs = r.expected.get_str();
        cr.pass = r.pass;
        cr.notes = "expansion: " + kst::to_string(r.value);
        cases.push_back(cr);
      } else {
        cases = kst::run_e6(a_max, lo, hi);
      }
      return finish(kst::make_report(json{{"symmetrization", "full-group sum"}}, cases), out);
    }

    if (witness->parsed()) {
      const kst::KernelConvention conv =
          kernel_name.empty() ? kst::KernelConvention::kRatio : kst::parse_kernel_convention(kernel_name);
      if (alpha_text.empty()) {
        return finish(kst::make_report(json{{"kernel", kst::to_string(conv)}}, kst::run_witness(conv, a_max, lo, hi)),
                      out);
      }
      const auto alpha = parse_signed_ints(alpha_text);
      if (a_size != 0 && a_size != static_cast<int>(alpha.size())) {
        throw kst::InvalidArgument("--a does not match the length of --alpha");
      }
      const kst::Composition v = kst::Composition::parse(wv_text);
      kst::CaseReport cr{"witness/alpha" + kst::join(alpha)};
      cr.params = {{"alpha", alpha}, {"v", v.parts()}, {"i", i_block}};
      kst::WitnessPtr w;
      bool pass = false;
      if (!check_path.empty()) {
        std::ifstream f(check_path);
        if (!f) throw kst::Error("cannot open " + check_path);
        json wj;
        try {
          wj = json::parse(f);
        } catch (const json::exception& e) {
          throw kst::ParseError(std::string("bad json: ") + e.what());
        }
        w = kst::witness_from_json(wj.contains("witness") ? wj["witness"] : wj);
        const kst::KClass c = kst::evaluate_witness(w, conv);
        const std::size_t d = static_cast<std::size_t>(v.d()) + alpha.size();
        const auto target = kst::full_symmetric(
            d, kst::index_range(static_cast<std::size_t>(v.partial_sum(i_block)), alpha.size()), alpha);
        cr.lhs = kst::to_string(c.element());
        cr.rhs = kst::to_string(target);
        pass = c.element() == target;
        cr.unit = "1";
        cr.notes = "re-evaluated from " + check_path;
      } else {
        const auto r = kst::verify_witness(alpha, v, i_block, conv, &w);
        cr.lhs = kst::to_string(r.evaluated);
        cr.rhs = kst::to_string(r.target);
        if (r.unit) cr.unit = kst::to_string(*r.unit);
        pass = r.pass && r.evaluated == r.target;
        cr.notes = r.norms_decrease ? "norms strictly decrease" : "norm descent violated";
      }
      cr.pass = pass;
      json j = kst::make_report(json{{"kernel", kst::to_string(conv)}}, {cr}).to_json();
      j["witness"] = kst::witness_to_json(w);
      write_out(j, out);
      return pass ? 0 : 1;
    }

    if (root->parsed()) {
      const kst::KernelConvention conv = kst::KernelConvention::kRatio;
      std::vector<kst::CaseReport> cases;
      const kst::Composition w = kst::Composition::parse(weight_text);
      const auto r = kst::divided_power_nonvanishing(i_block, k_loop, w, m_dp, m_root, conv);
      kst::CaseReport cr{"root-of-unity/E" + std::to_string(m_dp) + "-at-zeta" + std::to_string(m_root)};
      cr.params = {{"i", i_block}, {"k", k_loop}, {"weight", w.parts()}, {"m_dp", m_dp}, {"m_root", m_root}};
      cr.pass = r.precondition && r.pass;
      cr.notes = !r.precondition ? "precondition rejected: [m_dp]! does not vanish at this root"
                                 : (r.pass ? "divided power survives, plain power vanishes"
                                           : "specialization did not separate the two images");
      cases.push_back(cr);
      auto rest = kst::run_root_of_unity(conv, root_max, pairs, kst::SuiteConfig{}.seed);
      cases.insert(cases.end(), rest.begin() + 1, rest.end());
      return finish(kst::make_report(json{{"kernel", kst::to_string(conv)}}, cases), out);
    }
  } catch (const kst::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
