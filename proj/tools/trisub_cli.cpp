// Command-line front end: reproducible simulations, measure and rate
// estimates, and the exact certifications, all driven by explicit seeds.
//
// Exit codes: 0 success, 1 certification verdict false, 2 usage error,
// 3 I/O failure.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "trisub/certify.hpp"
#include "trisub/chain.hpp"
#include "trisub/trace_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCertFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::string join_command(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

int emit(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    return std::cout ? kExitOk : kExitIo;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    return kExitIo;
  }
  os << payload;
  os.flush();
  return os ? kExitOk : kExitIo;
}

struct CommonOut {
  std::string format = "csv";
  std::string out = "-";

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out, "Output path ('-' for stdout)");
  }
};

int emit_record(const CommonOut& io, const trisub::Provenance& prov,
                const std::string& scalar_name, double scalar_value) {
  std::ostringstream os;
  if (io.format == "json") {
    os << trisub::scalar_json(prov, scalar_name, scalar_value).dump(2) << "\n";
  } else {
    trisub::write_scalar_csv(os, prov, scalar_name, scalar_value);
  }
  return emit(io.out, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  using namespace trisub;

  CLI::App app{"trisub: barycentric-subdivision triangle chain laboratory"};
  app.require_subcommand(1);

  const std::string command_line = join_command(argc, argv);
  const std::string version = TRISUB_VERSION;
  auto prov = [&](const std::string& seed) {
    return Provenance{command_line, seed, version};
  };

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "Run one chain and export the trace");
  std::uint64_t sim_seed = 0;
  std::string sim_chain = "flat";
  long sim_steps = 1000;
  std::optional<double> sim_x;
  double sim_y = std::sqrt(3.0) / 2.0;
  CommonOut sim_io;
  sim->add_option("--seed", sim_seed, "Die-stream seed")->required();
  sim->add_option("--chain", sim_chain, "Chain kind")->check(CLI::IsMember({"flat", "triangle"}));
  sim->add_option("--steps", sim_steps, "Number of steps")->check(CLI::NonNegativeNumber);
  sim->add_option("--start-x", sim_x,
                  "Start x (flat chain: drawn uniformly from the seed stream when omitted)");
  sim->add_option("--start-y", sim_y, "Start y for the triangle chain (default: equilateral)");
  sim_io.attach(sim);

  // ---- mu ----
  auto* mu = app.add_subcommand("mu", "Estimate the invariant-measure histogram of the flat chain");
  std::uint64_t mu_seed = 0;
  long mu_steps = 100000;
  int mu_bins = 100;
  CommonOut mu_io;
  mu->add_option("--seed", mu_seed, "Die-stream seed")->required();
  mu->add_option("--steps", mu_steps, "Chain steps")->check(CLI::PositiveNumber);
  mu->add_option("--bins", mu_bins, "Histogram bins over [0,1/2]")->check(CLI::PositiveNumber);
  mu_io.attach(mu);

  // ---- lyapunov ----
  auto* lya = app.add_subcommand("lyapunov", "Slope of ln(Y_n) over the second half of a planar run");
  std::uint64_t lya_seed = 0;
  long lya_steps = 100000;
  double lya_x = 0.3, lya_y = 0.4;
  CommonOut lya_io;
  lya->add_option("--seed", lya_seed, "Die-stream seed")->required();
  lya->add_option("--steps", lya_steps, "Number of steps")->check(CLI::PositiveNumber);
  lya->add_option("--start-x", lya_x, "Start x");
  lya->add_option("--start-y", lya_y, "Start y (must be positive)");
  lya_io.attach(lya);

  // ---- rate-l ----
  auto* rate = app.add_subcommand("rate-l", "Estimate the rate L along a flat-chain run");
  std::uint64_t rate_seed = 0;
  long rate_steps = 100000;
  std::optional<double> rate_x;
  CommonOut rate_io;
  rate->add_option("--seed", rate_seed, "Die-stream seed")->required();
  rate->add_option("--steps", rate_steps, "Number of steps")->check(CLI::PositiveNumber);
  rate->add_option("--start-x", rate_x, "Start (drawn uniformly from the seed stream when omitted)");
  rate_io.attach(rate);

  // ---- couple ----
  auto* cpl = app.add_subcommand("couple", "Planar and flat chains on one die stream, with the gap");
  std::uint64_t cpl_seed = 0;
  long cpl_steps = 1000;
  double cpl_x = 0.3, cpl_y = 0.4;
  std::optional<double> cpl_z;
  CommonOut cpl_io;
  cpl->add_option("--seed", cpl_seed, "Die-stream seed")->required();
  cpl->add_option("--steps", cpl_steps, "Number of steps")->check(CLI::NonNegativeNumber);
  cpl->add_option("--start-x", cpl_x, "Planar start x");
  cpl->add_option("--start-y", cpl_y, "Planar start y");
  cpl->add_option("--start-z", cpl_z, "Flat start (defaults to --start-x)");
  cpl_io.attach(cpl);

  // ---- certify ----
  auto* cert = app.add_subcommand("certify", "Exact certifications; exit 0 iff all verdicts hold");
  bool cert_all = false, cert_fpos = false, cert_fmono = false, cert_grid = false;
  int cert_lip_order = 0;
  int cert_grid_n = 0;
  std::string cert_out = "-";
  cert->add_flag("--all", cert_all, "Run the full certification set (default)");
  cert->add_flag("--f-positive", cert_fpos, "Certify R-1 > 0 on each branch interval");
  cert->add_flag("--f-monotone", cert_fmono, "Certify monotone decrease of R");
  cert->add_flag("--grid-check", cert_grid, "Run the derivative-bound grid check");
  cert->add_option("--lipschitz", cert_lip_order, "Run one Lipschitz grid product (order 1, 2 or 3)")
      ->check(CLI::Range(1, 3));
  cert->add_option("--grid-n", cert_grid_n,
                   "Mesh parameter (default: 66 for --grid-check, 10000 for --lipschitz)");
  cert->add_option("--out", cert_out, "Output path ('-' for stdout)");

  // ---- preimage ----
  auto* pre = app.add_subcommand("preimage", "Count preimages of a point under the six maps");
  std::string pre_x;
  CommonOut pre_io;
  pre->add_option("--x", pre_x, "Point in [0,1/2], as 'p/q' or decimal (parsed exactly)")->required();
  pre_io.attach(pre);

  // ---- fvalue ----
  auto* fv = app.add_subcommand("fvalue", "Mean log growth at a point and depth");
  double fv_x = 0.5;
  int fv_depth = 2;
  CommonOut fv_io;
  fv->add_option("--x", fv_x, "Point in [0,1/2]")->required();
  fv->add_option("--depth", fv_depth, "Word length (1..8)")->check(CLI::Range(1, 8));
  fv_io.attach(fv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sim->parsed()) {
      std::ostringstream os;
      if (sim_chain == "flat") {
        DieStream die(sim_seed);
        const double start = sim_x ? *sim_x : 0.5 * die.uniform01();
        const FlatTraceData t = run_flat_chain(die, start, sim_steps);
        if (sim_io.format == "json")
          os << to_json(t, prov(std::to_string(sim_seed))).dump(2) << "\n";
        else
          write_csv(os, t, prov(std::to_string(sim_seed)));
      } else {
        const ShapePoint start{sim_x ? *sim_x : 0.5, sim_y};
        if (!is_valid_shape(start)) throw std::invalid_argument("simulate: start is not a valid shape");
        const TriangleTraceData t = run_triangle_chain(sim_seed, start, sim_steps);
        if (sim_io.format == "json")
          os << to_json(t, prov(std::to_string(sim_seed))).dump(2) << "\n";
        else
          write_csv(os, t, prov(std::to_string(sim_seed)));
      }
      return emit(sim_io.out, os.str());
    }

    if (mu->parsed()) {
      const Histogram h = estimate_invariant_measure(mu_seed, mu_steps, mu_bins);
      std::ostringstream os;
      if (mu_io.format == "json")
        os << to_json(h, prov(std::to_string(mu_seed))).dump(2) << "\n";
      else
        write_csv(os, h, prov(std::to_string(mu_seed)));
      return emit(mu_io.out, os.str());
    }

    if (lya->parsed()) {
      const TriangleTraceData t = run_triangle_chain(lya_seed, {lya_x, lya_y}, lya_steps);
      const double slope = lyapunov_slope_Y(t);
      return emit_record(lya_io, prov(std::to_string(lya_seed)), "lyapunov_slope", slope);
    }

    if (rate->parsed()) {
      const double L = estimate_rate_L(rate_seed, rate_steps, rate_x);
      return emit_record(rate_io, prov(std::to_string(rate_seed)), "rate_l", L);
    }

    if (cpl->parsed()) {
      const CoupledRun run = run_coupled_chain(cpl_seed, {cpl_x, cpl_y}, cpl_z ? *cpl_z : cpl_x, cpl_steps);
      std::ostringstream os;
      if (cpl_io.format == "json")
        os << to_json(run, prov(std::to_string(cpl_seed))).dump(2) << "\n";
      else
        write_csv(os, run, prov(std::to_string(cpl_seed)));
      return emit(cpl_io.out, os.str());
    }

    if (cert->parsed()) {
      const bool any = cert_fpos || cert_fmono || cert_grid || cert_lip_order > 0;
      if (cert_all || !any) {
        cert_fpos = cert_fmono = cert_grid = true;
        if (cert_lip_order == 0) cert_lip_order = 3;
      }
      nlohmann::json report{{"provenance", provenance_json(prov("none"))}};
      bool ok = true;
      if (cert_fpos) {
        const CertReport r = certify_F_positive();
        ok = ok && r.verdict;
        report["f_positive"] = to_json(r);
      }
      if (cert_fmono) {
        const CertReport r = certify_F_monotone();
        ok = ok && r.verdict;
        report["f_monotone"] = to_json(r);
      }
      if (cert_grid) {
        const GridCertResult g = grid_certify_F(cert_grid_n > 0 ? cert_grid_n : 66);
        ok = ok && g.verdict;
        report["grid_check"] = to_json(g);
      }
      if (cert_lip_order > 0) {
        const LipschitzResult l =
            lipschitz_criterion(cert_lip_order, cert_grid_n > 0 ? cert_grid_n : 10000);
        ok = ok && l.verdict;
        report["lipschitz"] = to_json(l);
      }
      report["verdict"] = ok;
      const int io_rc = emit(cert_out, report.dump(2) + "\n");
      if (io_rc != kExitOk) return io_rc;
      return ok ? kExitOk : kExitCertFailure;
    }

    if (pre->parsed()) {
      const Rational x = Rational::parse(pre_x);
      const int count = preimage_count(x);
      return emit_record(pre_io, prov("none"), "preimage_count", double(count));
    }

    if (fv->parsed()) {
      const double value = mean_log_growth(fv_x, fv_depth);
      return emit_record(fv_io, prov("none"), "fvalue", value);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}
