// Command-line front end: builds surfaces from JSON job configs, runs the
// built-in example registry, and drives the numeric verification suites.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "bjorling/registry.hpp"
#include "bjorling/selfcheck.hpp"
#include "bjorling/version.hpp"

namespace fs = std::filesystem;
using namespace bjorling;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitMath = 3;

int run_job(const JobConfig& cfg, const std::string& out_dir, const std::string& stem,
            bool write_mesh) {
  BuiltJob job;
  try {
    job = build_job(cfg);
  } catch (const UnknownCurve& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const MissingParam& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMath;
  }

  fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);

  if (write_mesh) {
    fs::path mesh_path =
        cfg.mesh_path.empty() ? dir / (stem + ".obj") : dir / cfg.mesh_path;
    try {
      SurfaceMesh mesh = sample_grid(*job.evaluator, job.domain);
      std::ofstream out(mesh_path, std::ios::binary);
      if (!out) throw IOFailure("cannot open " + mesh_path.string());
      export_obj(mesh, out);
      std::cout << "mesh: " << mesh_path.string() << " (" << mesh.vertices.size()
                << " vertices, " << mesh.faces.size() << " faces)\n";
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitMath;
    }
  }

  fs::path report_path =
      cfg.report_path.empty() ? dir / (stem + ".report.json") : dir / cfg.report_path;
  Json report = analysis_json(job);
  std::ofstream rout(report_path, std::ios::binary);
  if (!rout) {
    std::cerr << "error: cannot open " << report_path.string() << "\n";
    return kExitMath;
  }
  rout << report.dump(2) << "\n";
  std::cout << "report: " << report_path.string() << "\n";
  if (report.contains("analysis"))
    std::cout << "note: analysis unavailable (" << job.analysis_note << ")\n";
  return kExitOk;
}

int load_config(const std::string& path, JobConfig& cfg) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read config " << path << "\n";
    return kExitConfig;
  }
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    std::cerr << "error: malformed JSON in " << path << ": " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    cfg = job_config_from_json(j);
  } catch (const std::exception& e) {
    std::cerr << "error: invalid config " << path << ": " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit minimal surfaces from spinning Bjorling data"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path, out_dir;

  CLI::App* generate = app.add_subcommand("generate", "build a surface, write mesh + report");
  generate->add_option("--config", config_path, "job config (JSON)")->required();
  generate->add_option("--out", out_dir, "output directory");

  CLI::App* analyze = app.add_subcommand("analyze", "write the regularity report only");
  analyze->add_option("--config", config_path, "job config (JSON)")->required();
  analyze->add_option("--out", out_dir, "output directory");

  CLI::App* examples = app.add_subcommand("examples", "list or run the built-in examples");
  std::string example_arg = "list";
  examples->add_option("name", example_arg, "'list' or an example name");
  examples->add_option("--out", out_dir, "output directory");

  CLI::App* verify = app.add_subcommand("verify", "run the numeric oracle suites");
  std::string suite = "fast";
  double tol_scale = 1.0;
  verify->add_option("--suite", suite, "fast | full")
      ->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--tolerance-scale", tol_scale,
                     "multiply every tolerance (diagnostic)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed() || analyze->parsed()) {
      JobConfig cfg;
      if (int rc = load_config(config_path, cfg)) return rc;
      std::string stem = fs::path(config_path).stem().string();
      return run_job(cfg, out_dir, stem, generate->parsed());
    }

    if (examples->parsed()) {
      if (example_arg == "list") {
        for (const auto& e : example_registry())
          std::printf("%-22s %s\n", e.name.c_str(), e.description.c_str());
        return kExitOk;
      }
      const ExampleEntry* entry;
      try {
        entry = &find_example(example_arg);
      } catch (const UnknownExample& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
      }
      return run_job(entry->config, out_dir, entry->name, true);
    }

    if (verify->parsed()) {
      auto results = run_self_checks(suite == "full", tol_scale);
      std::printf("tolerance manifest (scale %g):\n", tol_scale);
      for (const auto& t : tol::kManifest)
        std::printf("  %-20s %-10.3g %s\n", t.name, t.value, t.what);
      std::printf("\n");
      int failed = 0;
      for (const auto& r : results) {
        std::printf("[%s] %-38s residual %.3e (bound %.3e)\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.residual, r.bound);
        if (!r.pass) ++failed;
      }
      std::printf("%d/%zu checks passed\n", static_cast<int>(results.size()) - failed,
                  results.size());
      return failed == 0 ? kExitOk : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMath;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMath;
  }
  return kExitOk;
}
