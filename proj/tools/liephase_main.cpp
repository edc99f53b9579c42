// Command line front end: job-file driven Berry phase computations with
// cross-validation against the direct Q-vector quadrature and the
// Schrodinger-equation oracle.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "liephase/job.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitAdiabaticity = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw liephase::ValidationError("cannot open job file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw liephase::ValidationError("cannot open output file '" + out_path + "'");
  out << text;
}

std::string stem_of(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

// requested grids always land in a file, next to --out or named after the job
std::string grid_path_for(const std::string& out_path, const std::string& job_path) {
  if (out_path.empty()) return stem_of(job_path) + "_curvature.csv";
  auto dot = out_path.find_last_of('.');
  std::string stem = dot == std::string::npos ? out_path : out_path.substr(0, dot);
  return stem + "_curvature.csv";
}

struct Options {
  std::string job_file;
  std::string out;
  std::string format = "json";
  double tolerance = 0.0;  // 0 = keep the job's tolerance
  bool quiet = false;
};

int run_report_command(const Options& opt, bool with_ode, bool check_tolerance) {
  liephase::JobSpec job = liephase::parse_job(read_file(opt.job_file));
  if (opt.tolerance > 0.0) job.tolerance = opt.tolerance;
  if (with_ode && job.taus.empty()) job.taus = {1e2, 1e3, 1e4};

  if (!opt.quiet)
    std::cerr << "liephase: running " << job.group << " job from " << opt.job_file << "\n";
  liephase::PhaseReport report = liephase::run_job(job, with_ode);

  std::string text = opt.format == "csv" ? liephase::report_to_csv(report, job)
                                         : liephase::report_to_json(report, job);
  write_output(text, opt.out);

  bool wants_grid = std::find(job.outputs.begin(), job.outputs.end(), "curvature_grid") !=
                    job.outputs.end();
  if (wants_grid) {
    std::string grid = liephase::emit_curvature_grid(job);
    std::string path = grid_path_for(opt.out, opt.job_file);
    write_output(grid, path);
    if (!opt.quiet) std::cerr << "liephase: curvature grid -> " << path << "\n";
  }

  if (report.numerical_failure()) {
    for (const auto& [method, message] : report.errors)
      std::cerr << "liephase: " << method << " failed: " << message << "\n";
    return kExitNumerical;
  }
  if (report.adiabaticity_only_failure()) {
    std::cerr << "liephase: all Schrodinger runs lost adiabaticity; formula results emitted\n";
    return kExitAdiabaticity;
  }
  if (check_tolerance && report.max_pairwise_discrepancy_mod2pi &&
      *report.max_pairwise_discrepancy_mod2pi > job.tolerance) {
    std::cerr << "liephase: verify failed, max pairwise discrepancy "
              << *report.max_pairwise_discrepancy_mod2pi << " exceeds tolerance "
              << job.tolerance << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Berry connections, curvatures and geometric phases for su(n) "
               "adiabatic evolutions"};
  app.require_subcommand(1);

  Options opt;
  int decompose_samples = 8;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("job", opt.job_file, "job file (JSON)")->required();
    cmd->add_option("--out", opt.out, "output path (default: stdout)");
    cmd->add_option("--format", opt.format, "report format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--tolerance", opt.tolerance, "override the job's discrepancy tolerance");
    cmd->add_flag("--quiet", opt.quiet, "suppress progress messages");
  };

  CLI::App* phase = app.add_subcommand(
      "phase", "line-integral formula plus the direct Q-vector quadrature");
  add_common(phase);
  CLI::App* verify = app.add_subcommand(
      "verify", "all three methods, with a discrepancy check against the tolerance");
  add_common(verify);
  CLI::App* curvature = app.add_subcommand("curvature", "curvature samples over a 2D slice");
  add_common(curvature);
  CLI::App* decompose =
      app.add_subcommand("decompose", "Mackey factors at sample points along the curve");
  add_common(decompose);
  decompose->add_option("--samples", decompose_samples, "number of curve samples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (phase->parsed()) return run_report_command(opt, /*with_ode=*/false, false);
    if (verify->parsed()) return run_report_command(opt, /*with_ode=*/true, true);
    if (curvature->parsed()) {
      liephase::JobSpec job = liephase::parse_job(read_file(opt.job_file));
      if (!job.grid)
        throw liephase::ValidationError("curvature: job file has no grid specification");
      write_output(liephase::emit_curvature_grid(job), opt.out);
      return kExitOk;
    }
    if (decompose->parsed()) {
      liephase::JobSpec job = liephase::parse_job(read_file(opt.job_file));
      write_output(liephase::decompose_along_curve(job, decompose_samples), opt.out);
      return kExitOk;
    }
  } catch (const liephase::ValidationError& e) {
    std::cerr << "liephase: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "liephase: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
