#include "sicforge/cli.hpp"

#include "sicforge/fiducial_search.hpp"
#include "sicforge/io.hpp"
#include "sicforge/mub.hpp"
#include "sicforge/operator_space.hpp"
#include "sicforge/sic_verify.hpp"
#include "sicforge/state_geometry.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <thread>

namespace sicforge::cli {

namespace {

using io::Json;
namespace fs = std::filesystem;

struct SearchArgs {
  int dim = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int max_iters = 3000;
  std::string out;
};

struct VerifyArgs {
  std::string fiducial;
  double tol = kCertifyTol;
  bool json = false;
};

struct KtArgs {
  std::string fiducial;
  double t = 2.0;
};

struct ConvertArgs {
  std::string fiducial;
  std::string rho;
  std::string probs;
  std::string out = "converted.json";
  double tol = kCertifyTol;
};

struct MubsArgs {
  int dim = 0;
  std::string state;
  bool json = false;
};

// Prints "key: value" lines with enough digits to be useful in scripts.
class Table {
public:
  explicit Table(std::ostream& out) : out_(out) {}

  Table& row(const std::string& key, double value) {
    std::ostringstream s;
    s << std::setprecision(12) << value;
    return row(key, s.str());
  }
  Table& row(const std::string& key, bool value) { return row(key, std::string(value ? "true" : "false")); }
  Table& row(const std::string& key, const std::string& value) {
    out_ << key << ": " << value << '\n';
    return *this;
  }

private:
  std::ostream& out_;
};

fs::path report_path_for(const fs::path& fiducial_path) {
  fs::path p = fiducial_path;
  p.replace_extension();
  p += ".report.json";
  return p;
}

Json residual_block(const StateVector& psi) {
  Json r = Json::object();
  r["gram"] = gram_residual(psi);
  r["quartic"] = quartic_residual(psi);
  r["objective"] = objective(psi);
  return r;
}

int cmd_search(const SearchArgs& a, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  SearchConfig config;
  config.dim = a.dim;
  config.restarts = a.restarts;
  config.seed = a.seed;
  config.certify_tol = a.tol;
  config.max_iters = a.max_iters;
  config.threads = thread_budget();
  const SearchOutcome outcome = search(config);

  const fs::path fid_path = a.out.empty() ? fs::path("fiducial_d" + std::to_string(a.dim) + ".json") : fs::path(a.out);
  const fs::path rep_path = report_path_for(fid_path);

  // residuals are recomputed from exactly what lands on disk
  Json fid = io::state_to_json(outcome.best.fiducial);
  const StateVector written = io::state_from_json(io::parse(io::dump(fid)));
  const Json residuals = residual_block(written);
  const bool certified = residuals["gram"].get<double>() <= a.tol && residuals["quartic"].get<double>() <= a.tol;
  fid["seed"] = a.seed;
  fid["tol"] = a.tol;
  fid["certified"] = certified;
  fid["residuals"] = residuals;
  io::write_json(fid_path, fid);

  Json report = io::header("run_report", Dim(a.dim));
  report["command"] = "search";
  report["seed"] = a.seed;
  report["restarts_requested"] = a.restarts;
  report["restarts_used"] = outcome.best.restarts_used;
  report["iterations"] = outcome.best.iterations;
  report["tol"] = a.tol;
  report["certified"] = certified;
  report["residuals"] = residuals;
  Json traces = Json::array();
  for (const RestartTrace& t : outcome.restarts) {
    traces.push_back(Json{{"index", t.index},
                          {"start_objective", t.start_objective},
                          {"final_objective", t.final_objective},
                          {"iterations", t.iterations},
                          {"accepted", t.accepted}});
  }
  report["restarts"] = std::move(traces);
  report["artifact_paths"] = Json::array({fid_path.string()});
  const auto elapsed = std::chrono::steady_clock::now() - start;
  report["wall_time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  io::write_json(rep_path, report);

  Table(out)
      .row("dim", std::to_string(a.dim))
      .row("restarts_used", std::to_string(outcome.best.restarts_used))
      .row("objective", residuals["objective"].get<double>())
      .row("gram_residual", residuals["gram"].get<double>())
      .row("quartic_residual", residuals["quartic"].get<double>())
      .row("certified", certified)
      .row("fiducial", fid_path.string())
      .row("report", rep_path.string());
  return certified ? kExitOk : kExitNegative;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const StateVector psi = io::state_from_json(io::read_file(a.fiducial));
  const Dim d = psi.dim();
  const SicSet sic = build_sic_set(psi, a.tol);
  const OperatorSet ops = OperatorSet::from_vectors(sic.vectors);
  const KtReport k1 = kt_measure(ops, 1.0);
  const KtReport k2 = kt_measure(ops, 2.0);
  const double phi = frame_potential(sic.vectors);
  const double dd = d.value();
  const QuasiOnbCertificate cert = quasi_onb_certify(ops, a.tol);
  const bool certified = sic.certified && cert.passed;

  if (a.json) {
    Json j = io::header("verify_report", d);
    j["gram_residual"] = sic.gram_residual;
    j["quartic_residual"] = sic.quartic_residual;
    j["K1"] = Json{{"value", k1.value}, {"lower_bound", *k1.lower_bound}, {"gap", *k1.gap}};
    j["K2"] = Json{{"value", k2.value}, {"lower_bound", *k2.lower_bound}, {"gap", *k2.gap}};
    j["frame_potential"] = phi;
    j["frame_potential_bound"] = frame_potential_bound(d);
    j["frame_identity_defect"] = phi - (k2.value + dd * dd);
    j["quasi_onb"] = Json{{"projector_deviation", cert.projector_deviation},
                          {"overlap_deviation", cert.overlap_deviation},
                          {"completeness_deviation", cert.completeness_deviation},
                          {"passed", cert.passed}};
    j["tol"] = a.tol;
    j["certified"] = certified;
    out << io::dump(j);
  } else {
    Table(out)
        .row("dim", std::to_string(d.value()))
        .row("gram_residual", sic.gram_residual)
        .row("quartic_residual", sic.quartic_residual)
        .row("K1", k1.value)
        .row("K1_lower_bound", *k1.lower_bound)
        .row("K2", k2.value)
        .row("K2_lower_bound", *k2.lower_bound)
        .row("frame_potential", phi)
        .row("frame_potential_bound", frame_potential_bound(d))
        .row("frame_identity_defect", phi - (k2.value + dd * dd))
        .row("quasi_onb_projector_deviation", cert.projector_deviation)
        .row("quasi_onb_overlap_deviation", cert.overlap_deviation)
        .row("quasi_onb_completeness_deviation", cert.completeness_deviation)
        .row("quasi_onb_passed", cert.passed)
        .row("certified", certified);
  }
  return certified ? kExitOk : kExitNegative;
}

int cmd_kt(const KtArgs& a, std::ostream& out) {
  const StateVector psi = io::state_from_json(io::read_file(a.fiducial));
  const SicSet sic = build_sic_set(psi);
  const KtReport r = kt_measure(OperatorSet::from_vectors(sic.vectors), a.t);
  Table(out).row("t", r.t).row("value", r.value).row("lower_bound", *r.lower_bound).row("gap", *r.gap);
  return kExitOk;
}

SicSet certified_sic_from(const std::string& path, double tol) {
  const StateVector psi = io::state_from_json(io::read_file(path));
  SicSet sic = build_sic_set(psi, tol);
  if (!sic.certified) {
    throw io::InputError("components", "fiducial does not certify at tol " + std::to_string(tol));
  }
  return sic;
}

Json purity_block(const ProbVector& p, const SicSet& sic) {
  Json j = Json::object();
  j["quadratic_residual"] = purity_quadratic_residual(p);
  if (sic.dim().size() <= kMaxTensorDim) {
    j["cubic_residual"] = purity_cubic_residual(p, structure_coefficients(sic));
  } else {
    j["cubic_residual"] = nullptr;
  }
  return j;
}

int cmd_convert(const ConvertArgs& a, std::ostream& out) {
  const SicSet sic = certified_sic_from(a.fiducial, a.tol);
  Table table(out);
  if (!a.rho.empty()) {
    const Json in = io::read_file(a.rho);
    ComplexMatrix m = io::matrix_from_json(in);
    std::optional<DensityMatrix> rho;
    try {
      rho.emplace(std::move(m));
    } catch (const std::invalid_argument& e) {
      throw io::InputError("matrix", e.what());
    }
    if (rho->dim() != sic.dim()) {
      throw io::InputError("dim", "does not match the fiducial dimension");
    }
    const ProbVector p = sic_probabilities(*rho, sic);
    Json j = io::probabilities_to_json(p.dim(), p.values());
    const Json purity = purity_block(p, sic);
    j["purity"] = purity;
    io::write_json(a.out, j);
    table.row("direction", std::string("rho->p")).row("quadratic_residual", purity["quadratic_residual"].get<double>());
    if (!purity["cubic_residual"].is_null()) {
      table.row("cubic_residual", purity["cubic_residual"].get<double>());
    }
  } else {
    const Json in = io::read_file(a.probs);
    const Dim d = io::read_header(in);
    std::vector<double> raw = io::probabilities_from_json(in);
    std::optional<ProbVector> p;
    try {
      p.emplace(d, std::move(raw));
    } catch (const std::invalid_argument& e) {
      throw io::InputError("p", e.what());
    }
    if (d != sic.dim()) {
      throw io::InputError("dim", "does not match the fiducial dimension");
    }
    const ReconstructedOperator rho = reconstruct_density(*p, sic);
    const double defect = max_abs(rho.matrix * rho.matrix - rho.matrix);
    Json j = io::density_to_json(rho.matrix);
    j["min_eigenvalue"] = rho.min_eigenvalue;
    j["physical"] = rho.physical;
    j["projector_defect"] = defect;
    const Json purity = purity_block(*p, sic);
    j["purity"] = purity;
    io::write_json(a.out, j);
    table.row("direction", std::string("p->rho"))
        .row("min_eigenvalue", rho.min_eigenvalue)
        .row("physical", rho.physical)
        .row("projector_defect", defect)
        .row("quadratic_residual", purity["quadratic_residual"].get<double>());
    if (!purity["cubic_residual"].is_null()) {
      table.row("cubic_residual", purity["cubic_residual"].get<double>());
    }
  }
  table.row("output", a.out);
  return kExitOk;
}

int cmd_mubs(const MubsArgs& a, std::ostream& out) {
  const Dim d(a.dim);
  const MubSet mubs = build_mubs(d);
  const double residual = unbiasedness_residual(mubs);
  bool ok = residual <= 1e-10;

  std::optional<UncertaintyProfile> profile;
  bool verdict = false;
  if (!a.state.empty()) {
    const StateVector psi = io::state_from_json(io::read_file(a.state));
    if (psi.dim() != d) {
      throw io::InputError("dim", "state dimension does not match --dim");
    }
    profile = uncertainty_profile(psi, mubs);
    verdict = is_minimum_uncertainty(*profile, d, kUncertaintyTol);
    ok = ok && verdict;
  }

  if (a.json) {
    Json j = io::header("mubs_report", d);
    j["num_bases"] = mubs.num_bases();
    j["unbiasedness_residual"] = residual;
    if (profile) {
      j["per_basis"] = profile->per_basis;
      j["probabilities"] = profile->probabilities;
      j["minimum_uncertainty"] = verdict;
      j["tol"] = kUncertaintyTol;
    }
    out << io::dump(j);
  } else {
    Table table(out);
    table.row("dim", std::to_string(d.value()))
        .row("num_bases", std::to_string(mubs.num_bases()))
        .row("unbiasedness_residual", residual);
    if (profile) {
      std::ostringstream s;
      s << std::setprecision(12);
      for (std::size_t b = 0; b < profile->per_basis.size(); ++b) {
        s << (b ? " " : "") << profile->per_basis[b];
      }
      table.row("per_basis", s.str()).row("minimum_uncertainty", verdict);
    }
  }
  return ok ? kExitOk : kExitNegative;
}

}  // namespace

int thread_budget() {
  int n = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("SIC_FORGE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) {
      n = std::min<long>(n, cap);
    }
  }
  return n;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sic-forge: Weyl-Heisenberg SIC search, certification and state geometry", "sic-forge"};
  app.require_subcommand(1);

  SearchArgs search_args;
  auto* search_cmd = app.add_subcommand("search", "Search for a fiducial vector");
  search_cmd->add_option("--dim", search_args.dim, "Dimension d")->required()->check(CLI::Range(2, 100000));
  search_cmd->add_option("--restarts", search_args.restarts, "Random restarts")->required()->check(CLI::PositiveNumber);
  search_cmd->add_option("--seed", search_args.seed, "Generator seed")->required();
  search_cmd->add_option("--tol", search_args.tol, "Certification tolerance on residuals")->check(CLI::PositiveNumber);
  search_cmd->add_option("--max-iters", search_args.max_iters, "Iterations per restart")->check(CLI::PositiveNumber);
  search_cmd->add_option("--out", search_args.out, "Fiducial output path (report goes next to it)");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Certify a fiducial file");
  verify_cmd->add_option("--fiducial", verify_args.fiducial, "Fiducial JSON")->required();
  verify_cmd->add_option("--tol", verify_args.tol, "Certification tolerance")->check(CLI::PositiveNumber);
  verify_cmd->add_flag("--json", verify_args.json, "Print a JSON report");

  KtArgs kt_args;
  auto* kt_cmd = app.add_subcommand("kt", "Orthonormality defect K_t of the SIC generated by a fiducial");
  kt_cmd->add_option("--fiducial", kt_args.fiducial, "Fiducial JSON")->required();
  kt_cmd->add_option("--t", kt_args.t, "Exponent t >= 1")->check(CLI::Range(1.0, 1e6));

  ConvertArgs convert_args;
  auto* convert_cmd = app.add_subcommand("convert", "Convert between density matrices and SIC probabilities");
  convert_cmd->add_option("--fiducial", convert_args.fiducial, "Fiducial JSON")->required();
  convert_cmd->add_option("--rho", convert_args.rho, "Density matrix JSON");
  convert_cmd->add_option("--probs", convert_args.probs, "Probability vector JSON");
  convert_cmd->add_option("--out", convert_args.out, "Output path");
  convert_cmd->add_option("--tol", convert_args.tol, "Fiducial certification tolerance")->check(CLI::PositiveNumber);

  MubsArgs mubs_args;
  auto* mubs_cmd = app.add_subcommand("mubs", "Build mutually unbiased bases and profile a state");
  mubs_cmd->add_option("--dim", mubs_args.dim, "Prime dimension")->required()->check(CLI::Range(2, 100000));
  mubs_cmd->add_option("--state", mubs_args.state, "State JSON for the uncertainty profile");
  mubs_cmd->add_flag("--json", mubs_args.json, "Print a JSON report");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("sic-forge");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) {
    argv.push_back(s.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (search_cmd->parsed()) {
      return cmd_search(search_args, out);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(verify_args, out);
    }
    if (kt_cmd->parsed()) {
      return cmd_kt(kt_args, out);
    }
    if (convert_cmd->parsed()) {
      if (convert_args.rho.empty() == convert_args.probs.empty()) {
        err << "error: exactly one of --rho or --probs is required\n";
        return kExitUsage;
      }
      return cmd_convert(convert_args, out);
    }
    if (mubs_cmd->parsed()) {
      return cmd_mubs(mubs_args, out);
    }
  } catch (const io::InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sicforge::cli
