// Command-line surface: classify parameter regimes, run boundary-sweep
// verifications, and evaluate the pointwise-multiplier criteria.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ballasy/asymptotics.hpp"
#include "ballasy/kernels.hpp"
#include "ballasy/spaces.hpp"
#include "ballasy/verifier.hpp"

using namespace ballasy;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUncovered = 2;
constexpr int kExitFail = 3;
constexpr int kExitIo = 4;

// ---- flat key=value config files -------------------------------------------

using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config(std::istream& in) {
  ConfigMap m;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) m[key] = val;
  }
  return m;
}

void emit_config(const ConfigMap& m, std::ostream& out) {
  for (const auto& [k, v] : m) out << k << " = " << v << "\n";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- family construction from flags ----------------------------------------

struct FamilyFlags {
  std::string family;
  int n = 1;
  double delta = 0, t = 0, r = 0, c = 0, k = 0;

  KernelFamily build() const {
    if (family == "propA-I") return KernelFamily::propA_I(n, c);
    if (family == "propA-J") return KernelFamily::propA_J(n, t, c);
    if (family == "p31-G") return KernelFamily::p31_G(n, c, k);
    if (family == "p31-F") return KernelFamily::p31_F(n, delta, c, k);
    if (family == "propB") return KernelFamily::propB(n, delta, t, r, k);
    if (family == "propC") return KernelFamily::propC(n, t, r);
    if (family == "p32") return KernelFamily::p32(n, delta, t, r, k);
    if (family == "l22") return KernelFamily::l22(n, t, r, k);
    if (family == "l21-I1") return KernelFamily::l21_I1(delta, c, k);
    if (family == "l21-I2") return KernelFamily::l21_I2(delta, c, k);
    throw CLI::ValidationError("--family", "unknown family tag '" + family + "'");
  }

  void to_config(ConfigMap& m) const {
    m["family"] = family;
    m["n"] = std::to_string(n);
    m["delta"] = fmt(delta);
    m["t"] = fmt(t);
    m["r"] = fmt(r);
    m["c"] = fmt(c);
    m["k"] = fmt(k);
  }
  void from_config(const ConfigMap& m) {
    if (auto it = m.find("family"); it != m.end()) family = it->second;
    if (auto it = m.find("n"); it != m.end()) n = std::stoi(it->second);
    if (auto it = m.find("delta"); it != m.end()) delta = std::stod(it->second);
    if (auto it = m.find("t"); it != m.end()) t = std::stod(it->second);
    if (auto it = m.find("r"); it != m.end()) r = std::stod(it->second);
    if (auto it = m.find("c"); it != m.end()) c = std::stod(it->second);
    if (auto it = m.find("k"); it != m.end()) k = std::stod(it->second);
  }
};

CPoint parse_point(const std::string& text, int n) {
  // "re,im[;re,im...]" one complex pair per coordinate
  std::vector<Cx> coords;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    double re = 0, im = 0;
    if (std::sscanf(part.c_str(), "%lf,%lf", &re, &im) < 1)
      throw CLI::ValidationError("point", "expected re,im pairs separated by ';'");
    coords.emplace_back(re, im);
  }
  while (static_cast<int>(coords.size()) < n) coords.emplace_back(0, 0);
  if (static_cast<int>(coords.size()) != n)
    throw CLI::ValidationError("point", "too many coordinates");
  return CPoint(std::move(coords));
}

// ---- verify ------------------------------------------------------------------

struct VerifyFlags {
  FamilyFlags fam;
  int m_lo = 2, m_hi = 13;
  std::string coupling = "same";
  std::string a0 = "0.3,0";
  double theta = 0.1;
  double rel_tol = 1e-8;
  int max_subdiv = 2000;
  int mc_samples = 200000;
  std::uint64_t seed = 0;
  double window_bound = 50.0;
  double slope_tol = 0.1;
  double rhs_offset = 0.0;
  std::string out_csv;
  std::string out_json;
  std::string format = "csv";

  void to_config(ConfigMap& m) const {
    fam.to_config(m);
    m["m_lo"] = std::to_string(m_lo);
    m["m_hi"] = std::to_string(m_hi);
    m["coupling"] = coupling;
    m["a0"] = a0;
    m["theta"] = fmt(theta);
    m["rel_tol"] = fmt(rel_tol);
    m["max_subdiv"] = std::to_string(max_subdiv);
    m["mc_samples"] = std::to_string(mc_samples);
    m["seed"] = std::to_string(seed);
    m["window_bound"] = fmt(window_bound);
    m["slope_tol"] = fmt(slope_tol);
    m["rhs_offset"] = fmt(rhs_offset);
    m["out_csv"] = out_csv;
    m["out_json"] = out_json;
    m["format"] = format;
  }
  void from_config(const ConfigMap& m) {
    fam.from_config(m);
    auto geti = [&](const char* k, int& v) {
      if (auto it = m.find(k); it != m.end()) v = std::stoi(it->second);
    };
    auto getd = [&](const char* k, double& v) {
      if (auto it = m.find(k); it != m.end()) v = std::stod(it->second);
    };
    auto gets = [&](const char* k, std::string& v) {
      if (auto it = m.find(k); it != m.end()) v = it->second;
    };
    geti("m_lo", m_lo);
    geti("m_hi", m_hi);
    gets("coupling", coupling);
    gets("a0", a0);
    getd("theta", theta);
    getd("rel_tol", rel_tol);
    geti("max_subdiv", max_subdiv);
    geti("mc_samples", mc_samples);
    if (auto it = m.find("seed"); it != m.end()) seed = std::stoull(it->second);
    getd("window_bound", window_bound);
    getd("slope_tol", slope_tol);
    getd("rhs_offset", rhs_offset);
    gets("out_csv", out_csv);
    gets("out_json", out_json);
    gets("format", format);
  }
};

Coupling coupling_from(const std::string& s) {
  if (s == "same") return Coupling::same;
  if (s == "antipodal") return Coupling::antipodal;
  if (s == "fixed") return Coupling::fixed;
  if (s == "rotated") return Coupling::rotated;
  if (s == "none") return Coupling::none;
  throw CLI::ValidationError("--coupling", "unknown coupling '" + s + "'");
}

int cmd_verify(const VerifyFlags& vf) {
  const KernelFamily fam = vf.fam.build();
  SweepPlan plan = SweepPlan::dyadic(vf.m_lo, vf.m_hi, fam.n,
                                     fam.is_two_point() ? coupling_from(vf.coupling)
                                                        : Coupling::none);
  plan.cfg.rel_tol = vf.rel_tol;
  plan.cfg.max_subdivisions = vf.max_subdiv;
  plan.cfg.mc_samples = vf.mc_samples;
  plan.cfg.seed = vf.seed;
  plan.theta = vf.theta;
  plan.rhs_exponent_offset = vf.rhs_offset;
  if (fam.is_two_point() && plan.coupling == Coupling::fixed)
    plan.a0 = parse_point(vf.a0, fam.n);

  const SweepReport rep = run_sweep(fam, plan);
  const VerdictResult v = verdict(rep, vf.window_bound, vf.slope_tol);

  if (!vf.out_csv.empty()) {
    std::ofstream os(vf.out_csv);
    if (!os) {
      std::cerr << "error: cannot write " << vf.out_csv << "\n";
      return kExitIo;
    }
    write_csv(rep, os);
    if (!os.good()) return kExitIo;
  }
  if (!vf.out_json.empty()) {
    std::ofstream os(vf.out_json);
    if (!os) {
      std::cerr << "error: cannot write " << vf.out_json << "\n";
      return kExitIo;
    }
    os << summary_json(rep, v);
    if (!os.good()) return kExitIo;
  }
  std::cout << rep.case_id.describe() << "\n";
  std::cout << "window=" << rep.summary.window << " slope=" << rep.summary.slope
            << " predicted=" << rep.summary.predicted << " excluded=" << rep.summary.excluded_rows
            << "\n";
  std::cout << (v.pass ? "PASS: " : "FAIL: ") << v.reason << "\n";
  return v.pass ? kExitOk : kExitFail;
}

// ---- multiplier --------------------------------------------------------------

struct MultiplierFlags {
  std::string psi = "one";
  int n = 1;
  double p = 2.0, s = 0.5;
  double alpha = 0.75, beta = 0, gamma = 0, decl_a = 0, decl_b = 0;
  double nu_alpha = 1.0, nu_beta = 0, nu_gamma = 0;
  bool nu_matched = false;
  int depth = 44;
  double w0 = 0.9;
  std::string out_json;
};

int cmd_multiplier(const MultiplierFlags& mf) {
  const double da = mf.decl_a > 0 ? mf.decl_a : mf.alpha * 0.5;
  const double db = mf.decl_b > 0 ? mf.decl_b : mf.alpha + std::abs(mf.beta) + std::abs(mf.gamma) + 0.5;
  NormalWeight mu(mf.alpha, mf.beta, mf.gamma, da, db);
  NormalWeight nu = mf.nu_matched
                        ? NormalWeight(mf.alpha + (mf.n - mf.s) / mf.p, mf.beta, mf.gamma,
                                       da, db + (mf.n - mf.s) / mf.p)
                        : NormalWeight(mf.nu_alpha, mf.nu_beta, mf.nu_gamma,
                                       mf.nu_alpha * 0.5,
                                       mf.nu_alpha + std::abs(mf.nu_beta) + std::abs(mf.nu_gamma) + 0.5);
  SpaceParams sp(mf.p, mf.s, mu, nu, mf.n);

  HoloFunction psi = HoloFunction::constant(mf.n, 1.0);
  if (mf.psi == "one") {
    psi = HoloFunction::constant(mf.n, 1.0);
  } else if (mf.psi == "psi1") {
    psi = HoloFunction::note2_psi1(mf.n);
  } else if (mf.psi == "psi2") {
    psi = HoloFunction::note2_psi2(mf.n);
  } else if (mf.psi == "psi3") {
    psi = HoloFunction::note2_psi3(mf.n);
  } else if (mf.psi == "coordinate") {
    psi = HoloFunction::coordinate(mf.n, 0, 1);
  } else if (mf.psi == "fw") {
    psi = HoloFunction::thm34_fw(CPoint::axis(mf.n, 0, Cx(mf.w0, 0)), mu, mf.p, mf.s);
  } else if (mf.psi == "gw") {
    psi = HoloFunction::cor36_gw(CPoint::axis(mf.n, 0, Cx(mf.w0, 0)), mf.beta);
  } else {
    std::cerr << "error: unknown catalog tag '" << mf.psi << "'\n";
    return kExitUsage;
  }

  const MultiplierReport rep = multiplier_criteria(psi, sp, BallGrid::multiplier_grid(mf.n, mf.depth));
  const std::string json = rep.to_json();
  if (!mf.out_json.empty()) {
    std::ofstream os(mf.out_json);
    if (!os) {
      std::cerr << "error: cannot write " << mf.out_json << "\n";
      return kExitIo;
    }
    os << json;
    if (!os.good()) return kExitIo;
  }
  std::cout << json;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"boundary asymptotics of singular integrals on the complex unit ball"};
  app.require_subcommand(1);

  // classify
  FamilyFlags cf;
  CLI::App* classify_cmd = app.add_subcommand("classify", "print the matching case of the estimate table");
  classify_cmd->add_option("--family", cf.family, "family tag")->required();
  classify_cmd->add_option("--n", cf.n, "dimension");
  classify_cmd->add_option("--delta", cf.delta, "(1-|z|^2) exponent");
  classify_cmd->add_option("--t", cf.t, "w-kernel exponent");
  classify_cmd->add_option("--r", cf.r, "second-point kernel exponent");
  classify_cmd->add_option("--c", cf.c, "exponent shift");
  classify_cmd->add_option("--k", cf.k, "log power");

  // verify
  VerifyFlags vf;
  std::string vf_config, vf_emit_config;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run a boundary sweep and print the verdict");
  verify_cmd->add_option("--config", vf_config, "key=value config file (flags override)");
  verify_cmd->add_option("--emit-config", vf_emit_config, "write the effective config and exit");
  verify_cmd->add_option("--family", vf.fam.family, "family tag");
  verify_cmd->add_option("--n", vf.fam.n, "dimension");
  verify_cmd->add_option("--delta", vf.fam.delta, "");
  verify_cmd->add_option("--t", vf.fam.t, "");
  verify_cmd->add_option("--r", vf.fam.r, "");
  verify_cmd->add_option("--c", vf.fam.c, "");
  verify_cmd->add_option("--k", vf.fam.k, "");
  verify_cmd->add_option("--m-lo", vf.m_lo, "first dyadic radius index");
  verify_cmd->add_option("--m-hi", vf.m_hi, "last dyadic radius index");
  verify_cmd->add_option("--coupling", vf.coupling, "same|antipodal|fixed|rotated");
  verify_cmd->add_option("--a0", vf.a0, "fixed second point, re,im[;re,im]");
  verify_cmd->add_option("--theta", vf.theta, "rotation angle for coupling=rotated");
  verify_cmd->add_option("--rel-tol", vf.rel_tol, "quadrature relative tolerance");
  verify_cmd->add_option("--max-subdiv", vf.max_subdiv, "subdivision budget");
  verify_cmd->add_option("--mc-samples", vf.mc_samples, "Monte Carlo samples");
  verify_cmd->add_option("--seed", vf.seed, "Monte Carlo seed");
  verify_cmd->add_option("--window-bound", vf.window_bound, "ratio window bound");
  verify_cmd->add_option("--slope-tol", vf.slope_tol, "exponent tolerance");
  verify_cmd->add_option("--debug-rhs-offset", vf.rhs_offset,
                         "debug: shift the RHS exponent to exercise the negative control");
  verify_cmd->add_option("--out", vf.out_csv, "CSV report path");
  verify_cmd->add_option("--summary", vf.out_json, "JSON summary path");
  verify_cmd->add_option("--format", vf.format, "csv|json (report format)");

  // multiplier
  MultiplierFlags mf;
  CLI::App* mult_cmd = app.add_subcommand("multiplier", "evaluate the pointwise-multiplier criteria");
  mult_cmd->add_option("--psi", mf.psi, "catalog tag: one|psi1|psi2|psi3|coordinate|fw|gw");
  mult_cmd->add_option("--n", mf.n, "dimension");
  mult_cmd->add_option("--p", mf.p, "");
  mult_cmd->add_option("--s", mf.s, "");
  mult_cmd->add_option("--alpha", mf.alpha, "mu: power exponent");
  mult_cmd->add_option("--beta", mf.beta, "mu: log exponent");
  mult_cmd->add_option("--gamma", mf.gamma, "mu: loglog exponent");
  mult_cmd->add_option("--decl-a", mf.decl_a, "declared lower normality exponent");
  mult_cmd->add_option("--decl-b", mf.decl_b, "declared upper normality exponent");
  mult_cmd->add_option("--nu-alpha", mf.nu_alpha, "nu: power exponent");
  mult_cmd->add_option("--nu-beta", mf.nu_beta, "");
  mult_cmd->add_option("--nu-gamma", mf.nu_gamma, "");
  mult_cmd->add_flag("--nu-matched", mf.nu_matched, "nu = mu * (1-r^2)^((n-s)/p)");
  mult_cmd->add_option("--depth", mf.depth, "grid depth (shells)");
  mult_cmd->add_option("--w0", mf.w0, "radius for fw/gw catalog entries");
  mult_cmd->add_option("--out", mf.out_json, "JSON report path");

  // config file values become defaults; flags parsed afterwards override them
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      std::ifstream is(argv[i + 1]);
      if (!is) {
        std::cerr << "error: cannot read " << argv[i + 1] << "\n";
        return kExitIo;
      }
      vf.from_config(parse_config(is));
      break;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (classify_cmd->parsed()) {
      const CaseId cid = classify(cf.build());
      std::cout << cid.describe() << "\n";
      return kExitOk;
    }
    if (verify_cmd->parsed()) {
      if (!vf_emit_config.empty()) {
        ConfigMap m;
        vf.to_config(m);
        std::ofstream os(vf_emit_config);
        if (!os) {
          std::cerr << "error: cannot write " << vf_emit_config << "\n";
          return kExitIo;
        }
        emit_config(m, os);
        return kExitOk;
      }
      return cmd_verify(vf);
    }
    if (mult_cmd->parsed()) return cmd_multiplier(mf);
  } catch (const UncoveredRegime& e) {
    std::cerr << "uncovered regime: " << e.what() << "\n";
    return kExitUncovered;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
