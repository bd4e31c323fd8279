// Command-line surface: BPD enumeration, Schubert polynomials, and the
// Monk bijection with its verification harness.
//
// Exit codes: 0 success, 1 verification/identity failure, 2 usage or input
// error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "bpd/decorated.hpp"
#include "bpd/grid.hpp"
#include "bpd/monk.hpp"
#include "bpd/poly.hpp"
#include "bpd/verify.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bpd::Permutation perm_from_flag(const std::string& text) {
  return bpd::Permutation(bpd::parse_one_line(text));
}

void print_trace(const bpd::Trace& trace) {
  for (const auto& step : trace) std::cout << step.to_string() << "\n";
}

struct MonkArgs {
  std::string pi_text;
  int alpha = 0;
  std::string label;  // "", "x" or "y"
  bool trace = false;
  std::string file;
};

int run_enumerate(const std::vector<int>& vals, bool count_only, const std::string& out_dir) {
  const bpd::Permutation pi{vals};
  const auto diagrams = bpd::enumerate_bpds(pi);
  if (count_only) {
    std::cout << diagrams.size() << "\n";
    return 0;
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    int idx = 0;
    for (const auto& d : diagrams) {
      std::ostringstream name;
      name << std::setw(4) << std::setfill('0') << idx++ << ".bpd";
      std::ofstream out(std::filesystem::path(out_dir) / name.str(), std::ios::binary);
      out << bpd::render(d);
    }
    return 0;
  }
  for (const auto& d : diagrams) std::cout << bpd::render(d);
  return 0;
}

int run_schubert(const std::vector<int>& vals, bool dbl, const std::string& method) {
  const bpd::Permutation pi{vals};
  if (method == "bpd") {
    std::cout << bpd::schubert_bpd(pi, dbl).to_string() << "\n";
  } else if (method == "dd") {
    std::cout << bpd::schubert_dd(pi, dbl).to_string() << "\n";
  } else {
    const bpd::Poly a = bpd::schubert_bpd(pi, dbl);
    const bpd::Poly b = bpd::schubert_dd(pi, dbl);
    std::cout << a.to_string() << "\n" << b.to_string() << "\n";
    if (!(a == b)) {
      std::cerr << "schubert: bpd and divided-difference results disagree\n";
      return 1;
    }
  }
  return 0;
}

int run_monk_apply(const MonkArgs& args) {
  const bpd::Permutation pi = perm_from_flag(args.pi_text);
  const bpd::ParsedDiagram parsed = bpd::parse_diagram(read_file(args.file));
  const bool decorated = parsed.labels.has_value() || !args.label.empty();

  if (!decorated) {
    bpd::MonkOutcome out = bpd::phi_forward(pi, args.alpha, parsed.diagram);
    if (args.trace) print_trace(out.trace);
    std::cout << bpd::render(out.diagram);
    return 0;
  }

  if (!args.label.empty() && !parsed.labels && !parsed.diagram.blanks().empty())
    throw std::invalid_argument(
        "apply: --label needs a decorated input (a plain diagram with blanks has no labels)");
  bpd::DecoratedBpd dec = bpd::DecoratedBpd::make(
      parsed.diagram, parsed.labels.value_or(std::map<bpd::Pos, bpd::Label>{}));
  bpd::PhiTildeResult out =
      args.label.empty()
          ? bpd::phi_tilde_forward_bare(pi, args.alpha, dec)
          : bpd::phi_tilde_forward(pi, args.alpha,
                                   args.label == "x" ? bpd::Label::X : bpd::Label::NegY, dec);
  if (args.trace) print_trace(out.trace);
  std::cout << bpd::render(out.diagram);
  return 0;
}

int run_monk_invert(const MonkArgs& args) {
  const bpd::Permutation pi = perm_from_flag(args.pi_text);
  const bpd::ParsedDiagram parsed = bpd::parse_diagram(read_file(args.file));

  if (!parsed.labels) {
    bpd::MonkOutcome out = bpd::phi_backward(pi, args.alpha, parsed.diagram);
    if (args.trace) print_trace(out.trace);
    if (out.kind == bpd::MonkKind::Shrunk)
      std::cout << "shrunk\n";
    else
      std::cout << "cover-down " << out.index << "\n";
    std::cout << bpd::render(out.diagram);
    return 0;
  }

  bpd::DecoratedBpd dec = bpd::DecoratedBpd::make(parsed.diagram, *parsed.labels);
  bpd::DecoratedMonkOutcome out = bpd::phi_tilde_backward(pi, args.alpha, dec);
  if (args.trace) print_trace(out.trace);
  if (out.kind == bpd::MonkKind::Shrunk)
    std::cout << "shrunk " << (*out.v == bpd::Label::X ? 'x' : 'y') << "\n";
  else
    std::cout << "cover-down " << out.index << "\n";
  std::cout << bpd::render(out.diagram);
  return 0;
}

int run_monk_verify(const bpd::VerifyOptions& opts) {
  const bpd::VerifyReport report = bpd::run_verify(opts);
  bpd::print_report(std::cout, opts, report);
  std::cerr << "wall_time=" << std::fixed << std::setprecision(3) << report.wall_seconds
            << "s\n";
  return report.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bumpless pipe dreams, Schubert polynomials, and the Monk bijection"};
  app.require_subcommand(1);

  std::vector<int> enum_vals;
  bool enum_count = false;
  std::string enum_out;
  CLI::App* enumerate = app.add_subcommand("enumerate", "list or count the BPDs of a permutation");
  enumerate->add_option("perm", enum_vals, "one-line notation, e.g. 2 3 5 1 4")
      ->required()
      ->expected(-1);
  enumerate->add_flag("--count", enum_count, "print only the number of diagrams");
  enumerate->add_option("--out", enum_out, "write diagrams to this directory instead of stdout");

  std::vector<int> sch_vals;
  bool sch_double = false;
  std::string sch_method = "bpd";
  CLI::App* schubert = app.add_subcommand("schubert", "Schubert polynomial of a permutation");
  schubert->add_option("perm", sch_vals, "one-line notation")->required()->expected(-1);
  schubert->add_flag("--double", sch_double, "double Schubert polynomial in x and y");
  schubert->add_option("--method", sch_method, "bpd | dd | both (default bpd)")
      ->check(CLI::IsMember({"bpd", "dd", "both"}));

  CLI::App* monk = app.add_subcommand("monk", "Monk bijection on diagrams");
  monk->require_subcommand(1);

  MonkArgs apply_args;
  CLI::App* apply = monk->add_subcommand("apply", "run the forward bijection on a diagram file");
  apply->add_option("--pi", apply_args.pi_text, "base permutation, one-line")->required();
  apply->add_option("--alpha", apply_args.alpha, "Monk position alpha")->required();
  apply->add_option("--label", apply_args.label, "insertion label for decorated diagrams")
      ->check(CLI::IsMember({"x", "y"}));
  apply->add_flag("--trace", apply_args.trace, "print one line per primitive step");
  apply->add_option("file", apply_args.file, "diagram file")->required();

  MonkArgs invert_args;
  CLI::App* invert = monk->add_subcommand("invert", "run the backward bijection on a diagram file");
  invert->add_option("--pi", invert_args.pi_text, "base permutation, one-line")->required();
  invert->add_option("--alpha", invert_args.alpha, "Monk position alpha")->required();
  invert->add_option("--label", invert_args.label, "accepted for symmetry; ignored on invert")
      ->check(CLI::IsMember({"x", "y"}));
  invert->add_flag("--trace", invert_args.trace, "print one line per primitive step");
  invert->add_option("file", invert_args.file, "diagram file")->required();

  bpd::VerifyOptions vopts;
  bool vdouble = false;
  CLI::App* verify = monk->add_subcommand("verify", "sweep S_n and check the Monk identities");
  verify->add_option("--n", vopts.n, "symmetric group size")->required()->check(CLI::Range(1, 9));
  verify->add_flag("--double", vdouble, "also check the double identity and decorations");
  verify->add_option("--jobs", vopts.jobs, "worker threads (default 1)")->check(CLI::Range(1, 256));
  verify->add_option("--sample", vopts.sample, "sample this many (pi, alpha) pairs");
  verify->add_option("--seed", vopts.seed, "sampling seed (fixed default for reproducibility)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*enumerate) return run_enumerate(enum_vals, enum_count, enum_out);
    if (*schubert) return run_schubert(sch_vals, sch_double, sch_method);
    if (*apply) return run_monk_apply(apply_args);
    if (*invert) return run_monk_invert(invert_args);
    if (*verify) {
      vopts.with_double = vdouble;
      return run_monk_verify(vopts);
    }
  } catch (const bpd::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
