// Command-line front end: one subcommand per library operation.
//
// Exit status: 0 success, 1 internal error, 2 a requested check failed,
// 3 search budget exhausted, 4 resource cap hit, 64 usage error,
// 65 malformed input data.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ensearch/checkpoint.hpp"
#include "ensearch/core_systems.hpp"
#include "ensearch/duplicate_bounds.hpp"
#include "ensearch/errors.hpp"
#include "ensearch/godel_codec.hpp"
#include "ensearch/poly_compiler.hpp"
#include "ensearch/xi_engine.hpp"

namespace {

using namespace ensearch;
using nlohmann::json;

enum Exit : int {
  kOk = 0,
  kFailure = 1,
  kCheckFailed = 2,
  kBudget = 3,
  kCap = 4,
  kUsage = 64,
  kData = 65,
};

struct Common {
  bool json = false;
  unsigned threads = 1;
  std::uint64_t cap = 10'000'000;
  std::string kernel = "auto";

  SearchLimits limits() const {
    SearchLimits l;
    l.tuple_pair_cap = cap;
    l.parallelism = threads;
    if (kernel == "scalar") {
      l.kernel = kernels::KernelChoice::Scalar;
    } else if (kernel == "avx2") {
      l.kernel = kernels::KernelChoice::Avx2;
    }
    return l;
  }
};

json big(const BigInt& v) {
  if (fits_u64(v)) return v.convert_to<std::uint64_t>();
  return v.str();
}

json tuple_json(const Tuple& t) {
  json out = json::array();
  for (const auto& v : t.values()) out.push_back(big(v));
  return out;
}

std::string tuple_plain(const Tuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ' ';
    out += t[i].str();
  }
  return out;
}

json equations_json(const EnSystem& s) {
  json out = json::array();
  for (const auto& eq : s.equations()) out.push_back(to_string(eq));
  return out;
}

void print(const std::string& line) { std::cout << line << '\n' << std::flush; }

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct StopRequested {};

// Output plus optional checkpoint for the streaming subcommands. Every
// emitted line is followed by a checkpoint save whose next_m is a valid
// resume point for exactly the lines emitted so far.
class Session {
 public:
  Session(std::string subcommand, json params, const std::string& path, std::uint64_t stop_after)
      : stop_after_(stop_after) {
    if (!path.empty()) path_ = path;
    cp_.subcommand = std::move(subcommand);
    cp_.params = std::move(params);
    if (path_) {
      if (auto loaded = load_checkpoint(*path_)) {
        if (loaded->subcommand != cp_.subcommand || loaded->params != cp_.params) {
          throw UsageError("checkpoint " + path_->string() + " was written for " +
                           loaded->subcommand + " " + loaded->params.dump());
        }
        cp_ = std::move(*loaded);
        resumed_ = true;
      }
    }
  }

  bool resumed() const { return resumed_; }
  const Checkpoint& state() const { return cp_; }

  // A non-empty `outcome` marks the stream finished in the same save.
  void emit(const std::string& line, std::uint64_t next_m, const std::string& outcome = {}) {
    print(line);
    cp_.record(line);
    cp_.next_m = next_m;
    if (!outcome.empty()) {
      cp_.finished = true;
      cp_.outcome = outcome;
    }
    save();
    if (stop_after_ && ++this_run_ >= stop_after_) throw StopRequested{};
  }

  void advance(std::uint64_t next_m) {
    cp_.next_m = next_m;
    save();
  }

  void finish(const std::string& outcome) {
    cp_.finished = true;
    cp_.outcome = outcome;
    save();
  }

 private:
  void save() {
    if (path_) save_checkpoint(*path_, cp_);
  }

  std::optional<std::filesystem::path> path_;
  std::uint64_t stop_after_;
  std::uint64_t this_run_ = 0;
  bool resumed_ = false;
  Checkpoint cp_;
};

struct StreamFlags {
  std::string checkpoint;
  std::uint64_t stop_after = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--checkpoint", checkpoint, "Checkpoint file; resumed when it exists");
    cmd->add_option("--stop-after", stop_after,
                    "Stop after emitting this many lines (simulated interruption)");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded witness searches over E_n equation systems"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_flag("--json", common.json, "Line-delimited JSON output");
  app.add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--cap", common.cap, "Work cap (tuple pairs / signature checks)")
      ->check(CLI::PositiveNumber);
  app.add_option("--kernel", common.kernel, "Signature kernels")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  int status = kOk;

  // g -------------------------------------------------------------------
  unsigned g_n = 0;
  std::uint64_t g_m = 0;
  std::string g_mode = "optimized";
  auto* g_cmd = app.add_subcommand("g", "g(n,m) for one box");
  g_cmd->add_option("--n", g_n)->required()->check(CLI::Range(1u, 64u));
  g_cmd->add_option("--m", g_m)->required()->check(CLI::PositiveNumber);
  g_cmd->add_option("--mode", g_mode)->check(CLI::IsMember({"naive", "optimized"}));
  g_cmd->callback([&] {
    const GMode mode = g_mode == "naive" ? GMode::Naive : GMode::Optimized;
    const std::uint64_t v = g_value(g_n, g_m, mode, common.limits());
    print(common.json ? json{{"n", g_n}, {"m", g_m}, {"g", v}}.dump() : std::to_string(v));
  });

  // g-stream ------------------------------------------------------------
  unsigned gs_n = 0;
  std::uint64_t gs_start = 1, gs_count = 0;
  StreamFlags gs_flags;
  auto* gs_cmd = app.add_subcommand("g-stream", "g(n,1), g(n,2), ... one line per value");
  gs_cmd->add_option("--n", gs_n)->required()->check(CLI::Range(1u, 64u));
  gs_cmd->add_option("--start-m", gs_start)->check(CLI::PositiveNumber);
  gs_cmd->add_option("--count", gs_count, "Number of values (default: until a cap is hit)");
  gs_flags.attach(gs_cmd);
  gs_cmd->callback([&] {
    Session session("g-stream",
                    {{"n", gs_n}, {"start_m", gs_start}, {"count", gs_count}, {"json", common.json}},
                    gs_flags.checkpoint, gs_flags.stop_after);
    if (session.state().finished) return;
    const std::uint64_t m0 = session.resumed() ? session.state().next_m : gs_start;
    GStream stream(gs_n, common.limits(), m0);
    while (!gs_count || session.state().emitted < gs_count) {
      const GApprox a = stream.next();
      const bool last = gs_count && session.state().emitted + 1 == gs_count;
      session.emit(common.json ? json{{"n", a.n}, {"m", a.m}, {"g", a.value}}.dump()
                               : std::to_string(a.value),
                   a.m + 1, last ? "count_reached" : "");
    }
    session.finish("count_reached");
  });

  // f-stream ------------------------------------------------------------
  unsigned fs_n = 0;
  std::uint64_t fs_start = 1, fs_iterations = 0;
  StreamFlags fs_flags;
  auto* fs_cmd = app.add_subcommand("f-stream", "Values g(n,m) = m-1 as m grows; the last is f(n)");
  fs_cmd->add_option("--n", fs_n)->required()->check(CLI::Range(1u, 64u));
  fs_cmd->add_option("--start-m", fs_start)->check(CLI::PositiveNumber);
  fs_cmd->add_option("--iterations", fs_iterations, "Boxes to evaluate (default: until a cap is hit)");
  fs_flags.attach(fs_cmd);
  fs_cmd->callback([&] {
    Session session("f-stream",
                    {{"n", fs_n}, {"start_m", fs_start}, {"iterations", fs_iterations},
                     {"json", common.json}},
                    fs_flags.checkpoint, fs_flags.stop_after);
    if (session.state().finished) return;
    const std::uint64_t m0 = session.resumed() ? session.state().next_m : fs_start;
    FStream stream(fs_n, common.limits(), m0);
    while (!fs_iterations || stream.next_m() < fs_start + fs_iterations) {
      if (auto a = stream.step()) {
        session.emit(common.json ? json{{"n", a->n}, {"m", a->m}, {"value", a->value}}.dump()
                                 : std::to_string(a->value),
                     stream.next_m());
      } else {
        session.advance(stream.next_m());
      }
    }
    session.finish("iterations_done");
  });

  // f-certify -----------------------------------------------------------
  unsigned fc_n = 0;
  std::uint64_t fc_box = 0;
  auto* fc_cmd = app.add_subcommand("f-certify", "Box-limited certificate for f(n)");
  fc_cmd->add_option("--n", fc_n)->required()->check(CLI::Range(1u, 64u));
  fc_cmd->add_option("--box", fc_box)->required()->check(CLI::PositiveNumber);
  fc_cmd->callback([&] {
    const FCertificate c = f_certify(fc_n, fc_box, common.limits());
    print(common.json ? json{{"n", c.n},
                             {"f", c.f_value},
                             {"verified_box", c.verified_box},
                             {"exact", c.exact}}
                            .dump()
                      : std::to_string(c.f_value));
  });

  // phi -----------------------------------------------------------------
  unsigned phi_n = 0;
  std::uint64_t phi_l = 0;
  auto* phi_cmd = app.add_subcommand("phi", "phi(n,l) = g(n+1,l+1)");
  phi_cmd->add_option("--n", phi_n)->required()->check(CLI::Range(0u, 63u));
  phi_cmd->add_option("--l", phi_l)->required();
  phi_cmd->callback([&] {
    const std::uint64_t v = phi(phi_n, phi_l, GMode::Optimized, common.limits());
    print(common.json ? json{{"n", phi_n}, {"l", phi_l}, {"phi", v}}.dump() : std::to_string(v));
  });

  // codec -----------------------------------------------------------------
  std::string ds_code;
  auto* ds_cmd = app.add_subcommand("decode-system", "System coded by a non-negative integer");
  ds_cmd->add_option("--n", ds_code)->required();
  ds_cmd->callback([&] {
    const EnSystem s = decode_system(parse_natural(ds_code));
    if (common.json) {
      print(json{{"code", ds_code}, {"n", s.n()}, {"equations", equations_json(s)}}.dump());
    } else {
      std::cout << format_system(s) << std::flush;
    }
  });

  std::string es_file;
  auto* es_cmd = app.add_subcommand("encode-system", "Smallest code of a system file");
  es_cmd->add_option("--file", es_file, "System in text format ('-' for stdin)")->required();
  es_cmd->callback([&] {
    const EnSystem s = parse_system(read_input(es_file));
    const BigInt code = encode_system(s);
    print(common.json ? json{{"code", big(code)}, {"equations", equations_json(s)}}.dump()
                      : code.str());
  });

  std::string dt_code;
  auto* dt_cmd = app.add_subcommand("decode-tuple", "Tuple coded by an integer >= 2");
  dt_cmd->add_option("--m", dt_code)->required();
  dt_cmd->callback([&] {
    const Tuple t = decode_tuple(parse_natural(dt_code));
    print(common.json ? json{{"m", dt_code}, {"tuple", tuple_json(t)}}.dump() : tuple_plain(t));
  });

  std::vector<std::string> et_values;
  auto* et_cmd = app.add_subcommand("encode-tuple", "Code of a tuple");
  et_cmd->add_option("--values", et_values, "Entries, comma separated")
      ->required()
      ->delimiter(',');
  et_cmd->callback([&] {
    std::vector<BigInt> values;
    for (const auto& v : et_values) values.push_back(parse_natural(v));
    const BigInt code = encode_tuple(Tuple(std::move(values)));
    print(common.json ? json{{"m", big(code)}}.dump() : code.str());
  });

  // xi ------------------------------------------------------------------
  std::string xi_code;
  std::uint64_t xi_budget = 100'000, xi_progress = 0;
  bool xi_unbounded = false, xi_normalized = false;
  StreamFlags xi_flags;
  auto* xi_cmd = app.add_subcommand("xi", "Emit 0, then search tuple codes for a solution");
  xi_cmd->add_option("--n", xi_code, "System code")->required();
  xi_cmd->add_option("--budget", xi_budget, "Tuple codes to test")->check(CLI::PositiveNumber);
  xi_cmd->add_flag("--unbounded", xi_unbounded, "Search without a budget");
  xi_cmd->add_flag("--normalized", xi_normalized, "Replace systems with max index > #indices");
  xi_cmd->add_option("--progress", xi_progress, "Report every this many iterations");
  xi_flags.attach(xi_cmd);
  xi_cmd->callback([&] {
    const BigInt code = parse_natural(xi_code);
    Session session("xi",
                    {{"n", xi_code},
                     {"budget", xi_unbounded ? json(nullptr) : json(xi_budget)},
                     {"normalized", xi_normalized},
                     {"progress", xi_progress},
                     {"json", common.json}},
                    xi_flags.checkpoint, xi_flags.stop_after);
    if (session.state().finished) {
      if (session.state().outcome == "budget_exhausted") status = kBudget;
      return;
    }

    XiOptions opt;
    opt.unbounded = xi_unbounded;
    opt.normalized = xi_normalized;
    opt.progress_interval = xi_progress;
    opt.parallelism = common.threads;
    opt.start_m = session.resumed() && session.state().emitted ? session.state().next_m : 2;
    opt.emit_initial_zero = !(session.resumed() && session.state().emitted);
    const std::uint64_t end_m = 2 + xi_budget;  // budget counts from code 2 across resumes
    opt.budget = xi_unbounded ? 0 : end_m - std::min(end_m, opt.start_m);
    opt.on_round = [&](std::uint64_t next_m) { session.advance(next_m); };

    auto sink = [&](const SearchEvent& ev) {
      if (std::holds_alternative<InitialZero>(ev)) {
        session.emit(common.json ? json{{"event", "initial_zero"}, {"value", 0}}.dump() : "0",
                     opt.start_m);
      } else if (const auto* t = std::get_if<Tested>(&ev)) {
        session.emit(common.json ? json{{"event", "tested"}, {"m", t->m},
                                        {"iterations", t->iterations}}
                                       .dump()
                                 : "tested m=" + std::to_string(t->m),
                     t->m + 1);
      } else if (const auto* f = std::get_if<Found>(&ev)) {
        const bool normalized = xi_normalized && needs_normalization(decode_system(code));
        session.emit(common.json ? json{{"event", "found"},
                                        {"value", f->value},
                                        {"m", f->solving_m},
                                        {"iterations", f->iterations},
                                        {"normalization_applied", normalized}}
                                       .dump()
                                 : std::to_string(f->value),
                     f->solving_m + 1, "found");
      } else if (const auto* b = std::get_if<BudgetExhausted>(&ev)) {
        status = kBudget;
        if (common.json) {
          session.emit(json{{"event", "budget_exhausted"}, {"last_m", b->last_m}}.dump(),
                       b->last_m + 1, "budget_exhausted");
        } else {
          std::cerr << "budget exhausted after code " << b->last_m << '\n';
          session.finish("budget_exhausted");
        }
      }
    };

    if (!xi_unbounded && opt.budget == 0) {
      // Interrupted between the last test and the exhaustion report.
      sink(BudgetExhausted{end_m - 1});
      return;
    }
    xi_run(code, opt, sink);
  });

  // min-code --------------------------------------------------------------
  std::string mc_code, mc_file;
  std::uint64_t mc_nodes = 10'000'000;
  auto* mc_cmd = app.add_subcommand("min-code", "Smallest tuple code solving a system");
  auto* mc_code_opt = mc_cmd->add_option("--n", mc_code, "System code");
  mc_cmd->add_option("--file", mc_file, "System in text format")->excludes(mc_code_opt);
  mc_cmd->add_option("--nodes", mc_nodes, "Search node budget")->check(CLI::PositiveNumber);
  mc_cmd->callback([&] {
    if (mc_code.empty() == mc_file.empty()) throw UsageError("give exactly one of --n, --file");
    const EnSystem s =
        mc_file.empty() ? decode_system(parse_natural(mc_code)) : parse_system(read_input(mc_file));
    const CodeSearchResult r = minimal_solving_code(s, mc_nodes);
    switch (r.status) {
      case CodeSearchStatus::Found:
        print(common.json ? json{{"status", "found"}, {"m", big(r.code)}, {"nodes", r.nodes}}.dump()
                          : r.code.str());
        break;
      case CodeSearchStatus::Unsatisfiable:
        print(common.json ? json{{"status", "unsatisfiable"}, {"reason", r.reason}}.dump()
                          : "unsatisfiable: " + r.reason);
        break;
      case CodeSearchStatus::BudgetExhausted:
        if (common.json) print(json{{"status", "budget_exhausted"}, {"nodes", r.nodes}}.dump());
        std::cerr << "node budget exhausted\n";
        status = kBudget;
        break;
    }
  });

  // chi-lb ----------------------------------------------------------------
  unsigned chi_n = 0;
  std::uint64_t chi_box = 0;
  std::string chi_mode = "signature";
  bool chi_list = false;
  auto* chi_cmd = app.add_subcommand("chi-lb", "Box-limited lower bound for chi(n)");
  chi_cmd->add_option("--n", chi_n)->required()->check(CLI::Range(1u, 64u));
  chi_cmd->add_option("--box", chi_box, "Entries range over 0..box")->required()->check(
      CLI::PositiveNumber);
  chi_cmd->add_option("--mode", chi_mode)->check(CLI::IsMember({"signature", "subsets"}));
  chi_cmd->add_flag("--candidates", chi_list, "List every uniquely solvable tuple");
  chi_cmd->callback([&] {
    const ChiMode mode = chi_mode == "subsets" ? ChiMode::ExhaustiveSubsets : ChiMode::Signature;
    const ChiEstimate est = chi_lower_bound(chi_n, chi_box, mode, common.limits());
    const ChiCandidate* best = nullptr;
    for (const auto& c : est.candidates) {
      if (!best || c.witness_bound > best->witness_bound) best = &c;
    }
    if (common.json) {
      json j{{"n", chi_n}, {"box", chi_box}, {"value", est.value},
             {"candidates", est.candidates.size()}};
      if (best) j["witness"] = tuple_json(best->solution);
      print(j.dump());
      if (chi_list) {
        for (const auto& c : est.candidates) {
          print(json{{"solution", tuple_json(c.solution)},
                     {"witness_bound", c.witness_bound},
                     {"equations", equations_json(c.system)}}
                    .dump());
        }
      }
    } else {
      print(std::to_string(est.value));
      if (chi_list) {
        for (const auto& c : est.candidates) print(tuple_plain(c.solution));
      }
    }
  });

  // compile-poly ----------------------------------------------------------
  std::string cp_expr, cp_emit;
  std::uint64_t cp_box = 0;
  auto* cp_cmd = app.add_subcommand("compile-poly", "Compile D(x1..xp) = 0 into an E_n system");
  cp_cmd->add_option("--expr", cp_expr, "Polynomial, e.g. \"x1 - x2*x2\"")->required();
  cp_cmd->add_option("--emit-system", cp_emit, "Write the system to this file");
  cp_cmd->add_option("--check-box", cp_box, "Verify solution counts over {0..B-1}^p")
      ->check(CLI::PositiveNumber);
  cp_cmd->callback([&] {
    const CompilationResult r = compile(Polynomial::parse(cp_expr));
    const std::string text = format_system(r.system);
    if (!cp_emit.empty()) {
      std::ofstream out(cp_emit, std::ios::trunc);
      if (!(out << text)) throw std::runtime_error("cannot write " + cp_emit);
    }
    std::optional<CountReport> report;
    if (cp_box) report = count_equivalence(r, cp_box);

    if (common.json) {
      json steps = json::array();
      for (const auto& s : r.witness_program) {
        static const char* names[] = {"one", "zero", "sum", "prod"};
        json step{{"kind", names[static_cast<int>(s.kind)]}, {"target", s.target}};
        if (s.kind == StepKind::Sum || s.kind == StepKind::Prod) {
          step["lhs"] = s.lhs;
          step["rhs"] = s.rhs;
        }
        steps.push_back(step);
      }
      json j{{"polynomial", r.polynomial.to_string()}, {"p", r.p}, {"n", r.n},
             {"one_variable", r.one_variable}, {"final_equality", to_string(r.final_equality)},
             {"equations", equations_json(r.system)}, {"witness_program", steps}};
      if (report) {
        j["check"] = {{"box", cp_box},
                      {"polynomial_zeros", report->polynomial_zeros},
                      {"system_solutions", report->system_solutions},
                      {"pointwise_agree", report->pointwise_agree},
                      {"extensions_unique", report->extensions_unique},
                      {"witness_range", report->witness_range},
                      {"holds", report->holds()}};
      }
      print(j.dump());
    } else {
      print("# D = " + r.polynomial.to_string());
      print("# p = " + std::to_string(r.p) + ", n = " + std::to_string(r.n) + ", one = x" +
            std::to_string(r.one_variable) + ", final: " + to_string(r.final_equality));
      if (cp_emit.empty()) std::cout << text << std::flush;
      if (report) {
        print("# check-box " + std::to_string(cp_box) + ": zeros " +
              std::to_string(report->polynomial_zeros) + ", solutions " +
              std::to_string(report->system_solutions) + ", unique extensions " +
              (report->extensions_unique ? "yes" : "no") + " (witness range " +
              std::to_string(report->witness_range) + ")");
      }
    }
    if (report && !report->holds()) status = kCheckFailed;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const StopRequested&) {
    return kOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return status;
}
