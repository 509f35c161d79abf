#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "framelab/error.hpp"
#include "framelab/frame_io.hpp"
#include "framelab/generators.hpp"
#include "framelab/perturbation.hpp"
#include "framelab/report.hpp"
#include "framelab/retrieval.hpp"
#include "framelab/tensor.hpp"

namespace framelab::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Options {
  std::string format = "json";
  bool timings = false;
  std::optional<double> tol;

  // gen
  std::string kind;
  std::optional<int> dim;
  std::optional<int> n;
  std::uint64_t seed = 0;
  std::string field = "real";
  std::optional<int> head_dim;
  int tail_len = 3;
  std::string output;

  // inputs
  std::string file;
  std::string right_file;

  int restarts = 16;
  int iters = 500;
  std::vector<std::size_t> ids;
  double eps = 0.0;
  std::vector<double> lambdas;
  int trials = 50;
  std::string check;
};

// Builds the report skeleton and keeps per-stage timings.
class Report {
 public:
  Report(std::string command, const Options& opt, const Tolerances& tol)
      : opt_(opt), doc_{{"command", std::move(command)}, {"tolerances", to_json(tol)}} {}

  void add_input(const std::string& path) {
    doc_["input_digests"][path] = sha256_hex(read_file(path));
  }

  template <typename Fn>
  decltype(auto) stage(const std::string& name, Fn&& fn) {
    const auto start = Clock::now();
    struct Stop {
      Report* self;
      std::string name;
      Clock::time_point start;
      ~Stop() {
        self->timings_[name] =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
      }
    } stop{this, name, start};
    return fn();
  }

  json& doc() { return doc_; }

  void emit(std::ostream& out) {
    if (opt_.timings) doc_["timings_ms"] = timings_;
    if (opt_.format == "text") {
      out << render_text(doc_);
    } else {
      out << canonical_dump(doc_);
    }
  }

 private:
  const Options& opt_;
  json doc_;
  std::map<std::string, double> timings_;
};

Tolerances resolve_tolerances(const Options& opt) {
  Tolerances tol;
  if (const char* env = std::getenv("FRAMELAB_TOL")) {
    try {
      tol.rank = std::stod(env);
    } catch (const std::exception&) {
      throw InvalidArgument(std::string("FRAMELAB_TOL is not a number: ") + env);
    }
  }
  if (opt.tol) tol.rank = *opt.tol;
  if (!(tol.rank > 0.0)) throw InvalidArgument("rank tolerance must be positive");
  return tol;
}

int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return kSuccess;
    case Verdict::fails:
      return kVerdictFails;
    case Verdict::inconclusive:
      return kUndecided;
  }
  return kUsage;
}

int cmd_gen(const Options& opt, std::ostream& out) {
  const Tolerances tol = resolve_tolerances(opt);
  const Field field = field_from_string(opt.field);
  json provenance = {{"generator", opt.kind}};
  Frame frame = [&] {
    if (opt.kind == "onb") {
      const int d = opt.dim.value_or(2);
      provenance["dim"] = d;
      return gen_onb(d);
    }
    if (opt.kind == "mercedes") return gen_mercedes();
    if (opt.kind == "harmonic") {
      const int d = opt.dim.value_or(2);
      const int n = opt.n.value_or(d + 1);
      provenance.update({{"dim", d}, {"n", n}, {"field", opt.field}});
      return gen_harmonic(d, n, field);
    }
    if (opt.kind == "random") {
      const int d = opt.dim.value_or(2);
      const int n = opt.n.value_or(2 * d);
      provenance.update({{"dim", d}, {"n", n}, {"seed", opt.seed}, {"field", opt.field}});
      return gen_random(d, n, opt.seed, field);
    }
    // deficient-tail
    const int d = opt.dim.value_or(3);
    const int head_dim = opt.head_dim.value_or(d - 1);
    provenance.update({{"dim", d}, {"head_dim", head_dim}, {"tail_len", opt.tail_len},
                       {"seed", opt.seed}, {"head_atoms", deficient_head_count(head_dim)}});
    return gen_deficient_plus_tail(d, head_dim, opt.tail_len, opt.seed);
  }();
  save_frame(opt.output, frame, provenance);

  Report report("gen", opt, tol);
  report.doc()["output"] = opt.output;
  report.doc()["output_digest"] = sha256_hex(read_file(opt.output));
  report.doc()["provenance"] = provenance;
  report.doc()["dim"] = frame.dim();
  report.doc()["atoms"] = frame.size();
  report.doc()["field"] = to_string(frame.field());
  report.emit(out);
  return kSuccess;
}

int cmd_bounds(const Options& opt, std::ostream& out) {
  const Tolerances tol = resolve_tolerances(opt);
  Report report("bounds", opt, tol);
  report.add_input(opt.file);
  const Frame frame = load_frame(opt.file).frame;
  json& doc = report.doc();
  doc["field"] = to_string(frame.field());
  doc["dim"] = frame.dim();
  doc["atoms"] = frame.size();
  doc["bounds"] = to_json(report.stage("bounds", [&] { return frame_bounds(frame); }));
  doc["eta"] = eta(frame.space());
  doc["bessel"] = to_json(bessel_norm_bound_check(frame));
  doc["is_frame"] = is_frame(frame_bounds(frame));
  doc["mu_complete"] = is_mu_complete(frame, tol.rank);
  report.emit(out);
  return kSuccess;
}

int cmd_certify_pr(const Options& opt, std::ostream& out) {
  const Tolerances tol = resolve_tolerances(opt);
  Report report("certify pr", opt, tol);
  report.add_input(opt.file);
  const Frame frame = load_frame(opt.file).frame;
  AlphaOptions alpha;
  alpha.restarts = opt.restarts;
  alpha.seed = opt.seed;
  const Certificate cert =
      report.stage("certify", [&] { return phase_retrieval_certify(frame, tol, alpha); });
  report.doc()["certificates"] = json::array({to_json(cert)});
  report.doc()["verdict"] = to_string(cert.verdict);
  report.emit(out);
  return verdict_code(cert.verdict);
}

int cmd_certify_nr(const Options& opt, std::ostream& out) {
  const Tolerances tol = resolve_tolerances(opt);
  Report report("certify nr", opt, tol);
  report.add_input(opt.file);
  const Frame frame = load_frame(opt.file).frame;
  const Certificate cert = report.stage("certify", [&] { return norm_retrieval_certify(frame, tol); });
  const Certificate oracle = report.stage("oracle", [&] { return norm_retrieval_oracle(frame, tol); });
  report.doc()["certificates"] = json::array({to_json(cert), to_json(oracle)});
  report.doc()["verdict"] = to_string(cert.verdict);
  report.doc()["oracle_agrees"] = cert.verdict == oracle.verdict;
  report.emit(out);
  return verdict_code(cert.verdict);
}

int cmd_alpha(const Options& opt, std::ostream& out) {
  const Tolerances tol = resolve_tolerances(opt);
  Report report("alpha", opt, tol);
  report.add_input(opt.file);
  const Frame frame = load_frame(opt.file).frame;
  AlphaOptions alpha;
  alpha.restarts = opt.restarts;
  alpha.iters = opt.iters;
  alpha.seed = opt.seed;
  const AlphaResult result = report.stage("alpha", [&] { return alpha_certify(frame, alpha); });
  report.doc()["alpha"] = to_json(result, frame.field());
  report.emit(out);
  return kSuccess;
}

void maybe_certify(Report& report, const Frame& frame, const Tolerances& tol, const char* key) {
  if (frame.size() <= tol.enumeration_cap) {
    report.doc()[key] = to_json(phase_retrieval_certify(frame, tol));
  }
}

int cmd_break_pr(const Options& opt, std::ostream& out) {
  const Tolerances tol = resolve_tolerances(opt);
  Report report("perturb break-pr", opt, tol);
  report.add_input(opt.file);
  const Frame frame = load_frame(opt.file).frame;
  const PerturbationResult result =
      report.stage("construct", [&] { return break_phase_retrieval(frame, opt.ids, opt.eps, tol); });
  const json provenance = {{"generator", "break-pr"},
                           {"source", opt.file},
                           {"head", opt.ids},
                           {"epsilon", opt.eps}};
  save_frame(opt.output, result.perturbed, provenance);
  report.doc()["output"] = opt.output;
  report.doc()["perturbation"] = to_json(result, frame.field());
  maybe_certify(report, result.perturbed, tol, "perturbed_pr");
  report.emit(out);
  return kSuccess;
}

int cmd_break_nr(const Options& opt, std::ostream& out) {
  const Tolerances tol = resolve_tolerances(opt);
  Report report("perturb break-nr", opt, tol);
  report.add_input(opt.file);
  const Frame frame = load_frame(opt.file).frame;
  const NormBreakResult result =
      report.stage("construct", [&] { return break_norm_retrieval(frame, opt.ids, opt.eps, tol); });
  const json provenance = {{"generator", "break-nr"},
                           {"source", opt.file},
                           {"subset", opt.ids},
                           {"epsilon", opt.eps}};
  save_frame(opt.output, result.result.perturbed, provenance);
  report.doc()["output"] = opt.output;
  report.doc()["perturbation"] = to_json(result, frame.field());
  report.emit(out);
  return kSuccess;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
  const Tolerances tol = resolve_tolerances(opt);
  Report report("sweep", opt, tol);
  report.add_input(opt.file);
  const Frame frame = load_frame(opt.file).frame;
  const auto rows = report.stage(
      "sweep", [&] { return stability_sweep(frame, opt.lambdas, opt.trials, opt.seed, tol); });
  json table = json::array();
  for (const SweepRow& row : rows) table.push_back(to_json(row));
  report.doc()["sweep"] = std::move(table);
  report.doc()["trials"] = opt.trials;
  report.doc()["seed"] = opt.seed;
  report.emit(out);
  return kSuccess;
}

int cmd_tensor(const Options& opt, std::ostream& out) {
  const Tolerances tol = resolve_tolerances(opt);
  Report report("tensor", opt, tol);
  report.add_input(opt.file);
  report.add_input(opt.right_file);
  const Frame left = load_frame(opt.file).frame;
  const Frame right = load_frame(opt.right_file).frame;
  const TensorFrame t = tensor_product(left, right);
  save_frame(opt.output, t.product,
             {{"generator", "tensor"}, {"factors", json::array({opt.file, opt.right_file})}});
  json& doc = report.doc();
  doc["output"] = opt.output;
  doc["dim"] = t.product.dim();
  doc["atoms"] = t.product.size();
  doc["bounds"] = to_json(frame_bounds(t.product));
  doc["factor_bounds"] = json::array({to_json(frame_bounds(left)), to_json(frame_bounds(right))});
  int code = kSuccess;
  if (opt.check == "pr") {
    const TensorPrCheck check = report.stage("check", [&] { return tensor_pr_check(left, right, tol); });
    doc["check"] = to_json(check);
    code = check.theorem_consistent ? kSuccess : kVerdictFails;
  } else if (opt.check == "nr") {
    const TensorNrCheck check = report.stage("check", [&] { return tensor_nr_check(left, right, tol); });
    doc["check"] = to_json(check);
    code = check.consistent ? kSuccess : kVerdictFails;
  }
  report.emit(out);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"framelab: continuous frames, phase retrieval and norm retrieval certificates",
               "framelab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_flag("--timings", opt.timings, "Include per-stage timings in the report");

  std::function<int()> action;

  auto* gen = app.add_subcommand("gen", "Write a generated frame file");
  gen->add_option("kind", opt.kind, "Generator")
      ->required()
      ->check(CLI::IsMember({"onb", "mercedes", "harmonic", "random", "deficient-tail"}));
  gen->add_option("--dim", opt.dim, "Dimension");
  gen->add_option("--n", opt.n, "Number of vectors");
  gen->add_option("--seed", opt.seed, "Random seed");
  gen->add_option("--field", opt.field, "Scalar field")->check(CLI::IsMember({"real", "complex"}));
  gen->add_option("--head-dim", opt.head_dim, "Head subspace dimension (deficient-tail)");
  gen->add_option("--tail-len", opt.tail_len, "Number of tail vectors (deficient-tail)");
  gen->add_option("-o,--output", opt.output, "Output frame file")->required();
  gen->callback([&] { action = [&] { return cmd_gen(opt, out); }; });

  auto* bounds = app.add_subcommand("bounds", "Frame bounds, eta and the Bessel norm bound");
  bounds->add_option("file", opt.file)->required()->check(CLI::ExistingFile);
  bounds->callback([&] { action = [&] { return cmd_bounds(opt, out); }; });

  auto* certify = app.add_subcommand("certify", "Certify phase or norm retrieval");
  certify->require_subcommand(1);
  auto* pr = certify->add_subcommand("pr", "Phase retrieval via the complement property");
  pr->add_option("file", opt.file)->required()->check(CLI::ExistingFile);
  pr->add_option("--tol", opt.tol, "Relative rank tolerance");
  pr->add_option("--alpha-restarts", opt.restarts, "Restarts for the complex alpha estimate");
  pr->add_option("--seed", opt.seed, "Seed for the alpha estimate");
  pr->callback([&] { action = [&] { return cmd_certify_pr(opt, out); }; });
  auto* nr = certify->add_subcommand("nr", "Norm retrieval via null-space orthogonality");
  nr->add_option("file", opt.file)->required()->check(CLI::ExistingFile);
  nr->add_option("--tol", opt.tol, "Relative rank tolerance");
  nr->callback([&] { action = [&] { return cmd_certify_nr(opt, out); }; });

  auto* alpha = app.add_subcommand("alpha", "Estimate the lower constant alpha of R(f)");
  alpha->add_option("file", opt.file)->required()->check(CLI::ExistingFile);
  alpha->add_option("--restarts", opt.restarts);
  alpha->add_option("--iters", opt.iters);
  alpha->add_option("--seed", opt.seed);
  alpha->callback([&] { action = [&] { return cmd_alpha(opt, out); }; });

  auto* perturb = app.add_subcommand("perturb", "Constructions that break PR or NR");
  perturb->require_subcommand(1);
  auto* bpr = perturb->add_subcommand("break-pr", "Break phase retrieval off a head set");
  bpr->add_option("file", opt.file)->required()->check(CLI::ExistingFile);
  bpr->add_option("--head", opt.ids, "Comma-separated head atom ids")->required()->delimiter(',');
  bpr->add_option("--eps", opt.eps)->required();
  bpr->add_option("-o,--output", opt.output)->required();
  bpr->callback([&] { action = [&] { return cmd_break_pr(opt, out); }; });
  auto* bnr = perturb->add_subcommand("break-nr", "Break norm retrieval on a subset");
  bnr->add_option("file", opt.file)->required()->check(CLI::ExistingFile);
  bnr->add_option("--subset", opt.ids, "Comma-separated atom ids")->required()->delimiter(',');
  bnr->add_option("--eps", opt.eps)->required();
  bnr->add_option("-o,--output", opt.output)->required();
  bnr->callback([&] { action = [&] { return cmd_break_nr(opt, out); }; });

  auto* sweep = app.add_subcommand("sweep", "Empirical stability of phase retrieval");
  sweep->add_option("file", opt.file)->required()->check(CLI::ExistingFile);
  sweep->add_option("--lambdas", opt.lambdas)->required()->delimiter(',');
  sweep->add_option("--trials", opt.trials);
  sweep->add_option("--seed", opt.seed);
  sweep->callback([&] { action = [&] { return cmd_sweep(opt, out); }; });

  auto* tensor = app.add_subcommand("tensor", "Tensor product of two frame files");
  tensor->add_option("left", opt.file)->required()->check(CLI::ExistingFile);
  tensor->add_option("right", opt.right_file)->required()->check(CLI::ExistingFile);
  tensor->add_option("-o,--output", opt.output)->required();
  tensor->add_option("--check", opt.check)->check(CLI::IsMember({"pr", "nr"}));
  tensor->callback([&] { action = [&] { return cmd_tensor(opt, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    return action();
  } catch (const CapExceeded& e) {
    err << "framelab: " << e.what() << "\n";
    return kUndecided;
  } catch (const Error& e) {
    err << "framelab: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "framelab: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace framelab::cli
