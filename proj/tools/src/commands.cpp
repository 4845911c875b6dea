#include "ferronem/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>

#include "ferronem/cli/vtk.hpp"
#include "ferronem/errors.hpp"
#include "ferronem/problems.hpp"

namespace ferronem::cli {

namespace {

constexpr int kMaxListedViolations = 20;

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("write to " + path.string() + " failed");
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out = open_output(path);
  body(out);
  finish(out, path);
}

// Runs `body` and maps library errors onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const MeshError& e) {
    err << "mesh error: " << e.what() << '\n';
    return kMeshInvalid;
  } catch (const DescentNonConvergence& e) {
    err << "nonconvergence: " << e.what() << " (outer iterations " << e.iterations() << ")\n";
    return kNonConvergence;
  } catch (const NonConvergenceError& e) {
    err << "nonconvergence: " << e.what() << " (iterations " << e.iterations() << ", residual "
        << e.last_residual() << ")\n";
    return kNonConvergence;
  } catch (const LinearSolverError& e) {
    err << "linear solver: " << e.what() << " (relative residual " << e.residual() << ")\n";
    return kNonConvergence;
  } catch (const DomainError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kUsage;
  } catch (const SingularityError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "io error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
    return kIoError;
  }
}

void print_violations(std::ostream& err, const WeakAcutenessReport& report) {
  err << "mesh is not weakly acute: " << report.violations.size() << " positive off-diagonal entries\n";
  int listed = 0;
  for (const auto& v : report.violations) {
    if (listed++ == kMaxListedViolations) {
      err << "  ...\n";
      break;
    }
    err << "  k(" << v.a << ", " << v.b << ") = " << v.k_ab << '\n';
  }
}

// Loads and validates the mesh; prints violations and returns nullptr on failure.
std::shared_ptr<const Triangulation> checked_mesh(const RunConfig& config, std::ostream& err) {
  auto mesh = build_mesh(config);
  const WeakAcutenessReport report = check_weakly_acute(*mesh);
  if (report.pass) return mesh;
  print_violations(err, report);
  return nullptr;
}

void print_summary(std::ostream& out, const RunConfig& config, const LevelResult& r) {
  const double d = signed_energy_error(config.example, r.e_exact, r.e_cv);
  out << std::setprecision(10);
  out << "example          " << to_string(config.example) << '\n'
      << "mesh             " << (config.mesh_file ? config.mesh_file->string() : "structured n=" + std::to_string(r.n))
      << " (h = " << r.h << ", " << r.vertices << " vertices, " << r.interior << " interior)\n"
      << "parameters       zeta=" << r.admm.zeta << " rho=" << r.admm.rho << " eps_pri=" << r.admm.eps_pri << '\n'
      << "initial energy   " << r.e_initial << '\n'
      << "final energy     " << r.e_cv << '\n'
      << "reference energy " << r.e_exact << '\n'
      << (config.example == Example::example2 ? "dE (exact - cv)  " : "dE (cv - exact)  ") << d << '\n'
      << "outer iterations " << r.report.outer_iterations() << '\n'
      << "inner iterations " << r.report.total_inner_iterations() << '\n'
      << "oscillations     " << r.report.oscillation_count << '\n'
      << "H1 error         " << r.errors.h1_semi << '\n'
      << "L2 error         " << r.errors.l2 << '\n';
  if (r.report.phi_clamp_events + r.report.gamma_clamp_events > 0) {
    out << "clamp events     phi " << r.report.phi_clamp_events << ", gamma " << r.report.gamma_clamp_events << '\n';
  }
}

void warn_sign(std::ostream& err, const RunConfig& config, const LevelResult& r) {
  if (config.example == Example::custom) return;
  if (signed_energy_error(config.example, r.e_exact, r.e_cv) <= 0.0) {
    err << "warning: energy error has unexpected sign on "
        << (config.mesh_file ? config.mesh_file->string() : "n=" + std::to_string(r.n)) << '\n';
  }
}

void write_histogram_files(const RunConfig& config, const Triangulation& mesh, const AdmmState& state) {
  const std::vector<double> errors = coupling_errors(state);
  write_file(config.out_dir / "histogram.csv", [&](std::ostream& os) { write_histogram_csv(os, mesh, errors); });
  write_file(config.out_dir / "histogram_bins.csv", [&](std::ostream& os) { write_histogram_bins_csv(os, errors); });
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

void ensure_writable(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  if (!std::filesystem::is_directory(dir)) throw Error(dir.string() + " is not a directory");
  const auto probe = dir / ".ferronem-write-probe";
  {
    std::ofstream out(probe);
    if (!out) throw Error("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe);
}

void write_run_csv(std::ostream& out, const RunConfig& config, const LevelResult& r) {
  out << std::setprecision(17);
  out << "# ferronem run v1\n";
  out << "example,n,h,vertices,interior,zeta,rho,eps_pri,E_exact,E_interp,E_initial,E_cv,dE,h1_semi,l2,"
         "outer,inner,oscillations,converged\n";
  out << to_string(config.example) << ',' << r.n << ',' << r.h << ',' << r.vertices << ',' << r.interior << ','
      << r.admm.zeta << ',' << r.admm.rho << ',' << r.admm.eps_pri << ',' << r.e_exact << ',' << r.e_interp << ','
      << r.e_initial << ',' << r.e_cv << ',' << signed_energy_error(config.example, r.e_exact, r.e_cv) << ','
      << r.errors.h1_semi << ',' << r.errors.l2 << ',' << r.report.outer_iterations() << ','
      << r.report.total_inner_iterations() << ',' << r.report.oscillation_count << ','
      << (r.report.converged ? 1 : 0) << '\n';
}

void write_energy_trace_csv(std::ostream& out, const DescentReport& report) {
  out << std::setprecision(17);
  out << "# ferronem energy-trace v1\n";
  out << "j,energy,decrease,inner_iterations,inner_residual\n";
  for (std::size_t j = 0; j < report.energy_history.size(); ++j) {
    out << j << ',' << report.energy_history[j] << ',';
    if (j > 0) out << report.energy_history[j - 1] - report.energy_history[j];
    out << ',';
    if (j > 0) out << report.inner_iterations[j - 1] << ',' << report.inner_residuals[j - 1];
    else out << ',';
    out << '\n';
  }
}

void write_convergence_csv(std::ostream& out, const RunConfig& config, const std::vector<ConvergenceRow>& rows) {
  out << std::setprecision(17);
  out << "# ferronem convergence v1 example=" << to_string(config.example)
      << (config.example == Example::example2 ? " dE=E_exact-E_cv" : " dE=E_cv-E_exact")
      << " rate=log(e_coarse/e_fine)/log(h_coarse/h_fine)\n";
  out << "n,h,E_exact,E_interp,E_cv,dE,rate_dE,h1_semi,rate_h1,l2,rate_l2,zeta,rho,eps_pri,outer,inner,"
         "oscillations\n";
  auto opt = [&](const std::optional<double>& v) {
    if (v) out << *v;
  };
  for (const auto& row : rows) {
    const LevelResult& r = row.level;
    out << r.n << ',' << r.h << ',' << r.e_exact << ',' << r.e_interp << ',' << r.e_cv << ',' << row.d_energy << ',';
    opt(row.rate_energy);
    out << ',' << r.errors.h1_semi << ',';
    opt(row.rate_h1);
    out << ',' << r.errors.l2 << ',';
    opt(row.rate_l2);
    out << ',' << r.admm.zeta << ',' << r.admm.rho << ',' << r.admm.eps_pri << ',' << r.report.outer_iterations()
        << ',' << r.report.total_inner_iterations() << ',' << r.report.oscillation_count << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Triangulation& mesh, const std::vector<double>& errors) {
  out << std::setprecision(17);
  out << "# ferronem histogram v1 interior_vertices=" << errors.size() << " mean_abs=" << mean(errors) << '\n';
  out << "vertex,x,y,abs_error,log10_abs_error\n";
  const auto& interior = mesh.interior_vertices();
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const int a = interior[i];
    out << a << ',' << mesh.vertex(a).x() << ',' << mesh.vertex(a).y() << ',' << errors[i] << ','
        << std::log10(errors[i]) << '\n';
  }
}

void write_histogram_bins_csv(std::ostream& out, const std::vector<double>& errors, double width) {
  out << std::setprecision(17);
  out << "# ferronem histogram-bins v1 interior_vertices=" << errors.size() << '\n';
  out << "log10_lower,log10_upper,count,fraction\n";
  // Exact zeros have no logarithm; they are counted in the lowest bin.
  std::map<long, long> counts;
  long zeros = 0;
  for (double e : errors) {
    if (e > 0.0) ++counts[static_cast<long>(std::floor(std::log10(e) / width))];
    else ++zeros;
  }
  if (zeros > 0) {
    if (counts.empty()) counts[0] = 0;
    counts.begin()->second += zeros;
  }
  const double m = static_cast<double>(errors.size());
  for (const auto& [bin, count] : counts) {
    out << static_cast<double>(bin) * width << ',' << static_cast<double>(bin + 1) * width << ',' << count << ','
        << static_cast<double>(count) / m << '\n';
  }
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    ensure_writable(config.out_dir);
    auto mesh = checked_mesh(config, err);
    if (!mesh) return static_cast<int>(kMeshInvalid);
    const LevelResult result = solve_level(config, mesh);
    print_summary(out, config, result);
    warn_sign(err, config, result);
    if (config.outputs.count(Output::table)) {
      write_file(config.out_dir / "run.csv", [&](std::ostream& os) { write_run_csv(os, config, result); });
    }
    if (config.outputs.count(Output::energy_trace)) {
      write_file(config.out_dir / "energy_trace.csv",
                 [&](std::ostream& os) { write_energy_trace_csv(os, result.report); });
    }
    if (config.outputs.count(Output::histogram)) write_histogram_files(config, *mesh, result.report.final_state);
    if (config.outputs.count(Output::vtk)) save_vtk(*result.report.final_field, config.out_dir / "field.vtk");
    return static_cast<int>(kOk);
  });
}

int cmd_convergence(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    if (config.mesh_file) throw DomainError("convergence runs use structured meshes; drop 'mesh'");
    if (config.levels.size() < 2) throw DomainError("convergence needs at least two levels");
    ensure_writable(config.out_dir);
    std::vector<LevelResult> levels;
    for (int n : config.levels) {
      RunConfig level_config = config;
      level_config.n = n;
      auto mesh = checked_mesh(level_config, err);
      if (!mesh) return static_cast<int>(kMeshInvalid);
      levels.push_back(solve_level(level_config, mesh));
      out << "level n=" << n << " done: E_cv=" << std::setprecision(12) << levels.back().e_cv
          << " outer=" << levels.back().report.outer_iterations() << '\n';
      warn_sign(err, level_config, levels.back());
    }
    const auto rows = convergence_table(std::move(levels), config.example);
    write_convergence_csv(out, config, rows);
    if (config.outputs.count(Output::table)) {
      write_file(config.out_dir / "convergence.csv",
                 [&](std::ostream& os) { write_convergence_csv(os, config, rows); });
    }
    return static_cast<int>(kOk);
  });
}

int cmd_histogram(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    ensure_writable(config.out_dir);
    auto mesh = checked_mesh(config, err);
    if (!mesh) return static_cast<int>(kMeshInvalid);
    AdmmState state = AdmmState::zeros(0);
    if (mesh->num_interior() > 0) {
      const LevelResult result = solve_level(config, mesh);
      state = result.report.final_state;
    }
    write_histogram_files(config, *mesh, state);
    const auto errors = coupling_errors(state);
    out << std::setprecision(6) << "interior vertices " << errors.size() << '\n'
        << "mean |p - phi(r)| " << mean(errors) << '\n';
    if (!errors.empty()) {
      out << "max |p - phi(r)|  " << *std::max_element(errors.begin(), errors.end()) << '\n';
    }
    return static_cast<int>(kOk);
  });
}

int cmd_export_vtk(const RunConfig& config, const std::string& which, const std::filesystem::path& path,
                   std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate();
    if (which != "final" && which != "initial" && which != "exact") {
      throw DomainError("field must be final, initial or exact");
    }
    if (path.has_parent_path()) ensure_writable(path.parent_path());
    auto mesh = checked_mesh(config, err);
    if (!mesh) return static_cast<int>(kMeshInvalid);
    const MaterialConstants mc = material_constants(config.c);
    const VortexSpec spec = vortex_spec(config);
    if (which == "exact") {
      save_vtk(interpolate(analytic_solution(spec, mc), mesh, mc), path);
    } else if (which == "initial") {
      const Domain domain = config.mesh_file ? Domain::from_mesh(*mesh) : Domain::unit_square();
      save_vtk(initial_guess(spec, path_end(config), mesh, mc, domain), path);
    } else {
      save_vtk(*solve_level(config, mesh).report.final_field, path);
    }
    out << "wrote " << path.string() << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_check_mesh(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto mesh = build_mesh(config);
    const WeakAcutenessReport report = check_weakly_acute(*mesh);
    out << std::setprecision(10) << "vertices   " << mesh->num_vertices() << '\n'
        << "triangles  " << mesh->num_triangles() << '\n'
        << "interior   " << mesh->num_interior() << '\n'
        << "h          " << mesh->h() << '\n';
    if (mesh->reoriented() > 0) out << "reoriented " << mesh->reoriented() << " clockwise triangles\n";
    out << "weakly acute (stiffness signs) " << (report.pass ? "yes" : "no") << '\n'
        << "weakly acute (angle sums)      " << (report.angle_pass ? "yes" : "no") << '\n';
    if (!report.inconsistencies.empty()) {
      err << "warning: the two weak-acuteness tests disagree on " << report.inconsistencies.size() << " edges\n";
    }
    if (report.pass) return static_cast<int>(kOk);
    print_violations(err, report);
    return static_cast<int>(kMeshInvalid);
  });
}

}  // namespace ferronem::cli
