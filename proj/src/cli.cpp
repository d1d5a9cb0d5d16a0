#include "lpsym/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>

#include <CLI11.hpp>

#include "lpsym/maxid.hpp"
#include "lpsym/mixture.hpp"
#include "lpsym/radial.hpp"
#include "lpsym/survival.hpp"
#include "lpsym/verification.hpp"
#include "lpsym/vp_sampler.hpp"

#ifndef LPSYM_VERSION
#define LPSYM_VERSION "dev"
#endif

namespace lpsym::cli {

namespace {

struct SampleOptions {
  int d = 2;
  double p = 1.0;
  std::size_t n = kDefaultSamples;
  std::uint64_t seed = kDefaultSeed;
  std::string out = "-";
  unsigned threads = 1;
  std::string radial = "unit";
  std::string measure = "harmonic:1";
  bool emit_npoints = false;
  bool provenance = false;
};

struct VerifyOptions {
  bool quick = false;
  bool full = false;
  bool fresh_seed = false;
  std::uint64_t seed = kDefaultSeed;
  std::string json;
  unsigned threads = 1;
};

std::vector<std::string> numbered(const std::string& prefix, int d) {
  std::vector<std::string> h;
  for (int i = 1; i <= d; ++i) h.push_back(prefix + std::to_string(i));
  return h;
}

// Writes through `out` for "-", otherwise to a freshly truncated file.
void with_output(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& fn) {
  if (path == "-") {
    fn(out);
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  fn(file);
  if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

void add_common(CLI::App* sub, SampleOptions& o, bool with_n) {
  sub->add_option("--d", o.d, "Dimension d >= 2")->required();
  sub->add_option("--p", o.p, "Norm exponent p >= 1")->required();
  if (with_n) {
    sub->add_option("--n", o.n, "Number of samples")->capture_default_str();
    sub->add_option("--seed", o.seed, "Master seed")->envname("LPSYM_SEED")->capture_default_str();
    sub->add_option("--threads", o.threads, "Worker threads (output does not depend on it)")
        ->capture_default_str();
  }
  sub->add_option("--out", o.out, "Output file, '-' for standard output")->capture_default_str();
}

int run_sampling(const std::string& cmd, const SampleOptions& o, std::ostream& out) {
  const Dimension d(o.d);
  const PowerParam p(o.p);
  if (o.n == 0) throw ParameterError("--n must be >= 1");
  const RngStream rng(o.seed);
  const unsigned threads = std::max(1u, o.threads);

  if (cmd == "sample-vp") {
    auto draws = sample_vp_batch(d, p, o.n, rng, threads);
    SampleBatch batch;
    batch.cols = 1;
    batch.seed = o.seed;
    for (const auto& s : draws) batch.values.push_back(s.value);
    with_output(o.out, out, [&](std::ostream& os) { write_csv(os, {"vp"}, batch); });
    return 0;
  }
  if (cmd == "sample-survival" || cmd == "sample-copula") {
    const auto radial = parse_radial_spec(o.radial, d);
    if (cmd == "sample-survival") {
      auto batch = sample_survival_batch(d, p, radial, o.n, rng, threads, o.provenance);
      auto header = numbered("z", o.d);
      if (o.provenance) {
        header.push_back("r");
        header.push_back("vp");
        for (auto& h : numbered("u", o.d)) header.push_back(h);
      }
      with_output(o.out, out, [&](std::ostream& os) { write_csv(os, header, batch); });
    } else {
      auto batch = copula_batch(d, p, radial, o.n, rng, threads);
      with_output(o.out, out, [&](std::ostream& os) { write_csv(os, numbered("u", o.d), batch); });
    }
    return 0;
  }
  // sample-maxid / sample-rcopula
  const auto nu = parse_measure_spec(o.measure);
  SampleBatch batch;
  std::vector<std::string> header;
  if (cmd == "sample-maxid") {
    batch = sample_maxid_batch(d, p, nu, o.n, rng, threads, o.emit_npoints);
    header = numbered("y", o.d);
  } else {
    batch = reciprocal_copula_batch(d, p, nu, o.n, rng, threads, o.emit_npoints);
    header = numbered("u", o.d);
  }
  if (o.emit_npoints) header.push_back("n_points");
  with_output(o.out, out, [&](std::ostream& os) { write_csv(os, header, batch); });
  return 0;
}

int run_verify(const VerifyOptions& o, std::ostream& out) {
  SuiteConfig config;
  config.quick = o.quick;
  config.seed = o.seed;
  if (o.fresh_seed) config.seed = (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
  config.threads = std::max(1u, o.threads);
  const auto report = run_suite(config);
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << "  metric=" << format_double(c.metric)
        << " tolerance=" << format_double(c.tolerance) << '\n';
  }
  out << (report.pass() ? "all checks passed" : "some checks FAILED") << " (seed " << report.seed << ")\n";
  if (!o.json.empty()) {
    with_output(o.json, out, [&](std::ostream& os) { os << report.to_json().dump(2) << '\n'; });
  }
  return report.pass() ? 0 : 1;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header, const SampleBatch& batch) {
  if (header.size() != batch.cols) throw std::logic_error("CSV header does not match batch width");
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  std::string line;
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    line.clear();
    const auto row = batch.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) line += ',';
      line += format_double(row[j]);
    }
    line += '\n';
    out << line;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact simulation of l_p-norm symmetric survival laws, V_p, and max-id vectors", "lpsym"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "Print version and exit");

  SampleOptions coeff_opts;
  auto* coeffs = app.add_subcommand("coeffs", "Print the mixture weight table as JSON");
  add_common(coeffs, coeff_opts, false);

  std::map<std::string, SampleOptions> sample_opts;
  std::vector<CLI::App*> samplers;
  const std::vector<std::pair<std::string, std::string>> sample_cmds{
      {"sample-vp", "Sample the mixing variable V_p (CSV column vp)"},
      {"sample-survival", "Sample Z = R V_p U^theta (CSV z1..zd)"},
      {"sample-copula", "Sample the outer power Archimedean copula phi(Z) (CSV u1..ud)"},
      {"sample-maxid", "Sample the max-id vector Y (CSV y1..yd)"},
      {"sample-rcopula", "Sample the outer power reciprocal Archimedean copula exp(-phi(Y))"},
  };
  for (const auto& [name, help] : sample_cmds) {
    auto& o = sample_opts[name];
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, o, true);
    if (name == "sample-survival" || name == "sample-copula") {
      sub->add_option("--radial", o.radial, "unit | clayton:A | erlang | table:PATH")->capture_default_str();
    }
    if (name == "sample-survival") sub->add_flag("--provenance", o.provenance, "Append r, vp, u1..ud columns");
    if (name == "sample-maxid" || name == "sample-rcopula") {
      sub->add_option("--measure", o.measure, "harmonic:A")->required();
      sub->add_flag("--emit-npoints", o.emit_npoints, "Append the number of Poisson points examined");
    }
    samplers.push_back(sub);
  }

  VerifyOptions vopts;
  auto* verify = app.add_subcommand("verify", "Run the statistical and analytic verification suite");
  auto* quick = verify->add_flag("--quick", vopts.quick, "Smaller sample sizes");
  auto* full = verify->add_flag("--full", vopts.full, "Full sample sizes (default)");
  quick->excludes(full);
  verify->add_option("--seed", vopts.seed, "Master seed")->envname("LPSYM_SEED")->capture_default_str();
  verify->add_flag("--fresh-seed", vopts.fresh_seed, "Draw a random master seed");
  verify->add_option("--json", vopts.json, "Write the JSON report to this file");
  verify->add_option("--threads", vopts.threads, "Worker threads")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  if (show_version) {
    out << "lpsym " << LPSYM_VERSION << '\n';
    return 0;
  }
  try {
    if (coeffs->parsed()) {
      const auto table = coefficient_table(Dimension(coeff_opts.d), PowerParam(coeff_opts.p));
      with_output(coeff_opts.out, out, [&](std::ostream& os) { os << table.to_json().dump() << '\n'; });
      return 0;
    }
    for (auto* sub : samplers) {
      if (sub->parsed()) return run_sampling(sub->get_name(), sample_opts[sub->get_name()], out);
    }
    if (verify->parsed()) return run_verify(vopts, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "error: a subcommand is required\n\n" << app.help();
  return 2;
}

}  // namespace lpsym::cli
