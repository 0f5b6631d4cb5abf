// Command-line front end: allocate / verify / gen / bench / withdraw / replay.
// Exit codes: 0 success, 1 invalid input (validation diagnostics, bad audit
// log, unknown names), 2 internal invariant violation (budget tripwire,
// consistency audit, replay of our own output failing).
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "seatalloc/allocator.hpp"
#include "seatalloc/audit.hpp"
#include "seatalloc/bench.hpp"
#include "seatalloc/generator.hpp"
#include "seatalloc/io.hpp"
#include "seatalloc/oracle.hpp"

namespace fs = std::filesystem;
using namespace seatalloc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitInternal = 2;

double budget_from_env() {
  if (const char* env = std::getenv("SEATALLOC_BUDGET_C")) {
    double v = std::atof(env);
    if (v > 0) return v;
    std::cerr << "ignoring non-positive SEATALLOC_BUDGET_C\n";
  }
  return kDefaultBudgetC;
}

int report_errors(const std::vector<Diagnostic>& errors) {
  for (const Diagnostic& d : errors) std::cerr << format(d) << '\n';
  return kExitBadInput;
}

std::optional<Instance> load_or_report(const fs::path& dir, bool quotas, int& exit_code) {
  ValidationResult vr = load_instance(dir, quotas);
  if (!vr.ok()) {
    exit_code = report_errors(vr.errors);
    return std::nullopt;
  }
  return std::move(vr.instance);
}

// "L2,L1" -> list ids; empty string -> natural order.
std::optional<std::vector<ListId>> parse_lists_order(const Instance& inst,
                                                     const std::string& spec) {
  std::vector<ListId> order;
  if (spec.empty()) {
    for (ListId t = 0; t < inst.list_count(); ++t) order.push_back(t);
    return order;
  }
  std::unordered_map<std::string, ListId> by_name;
  for (ListId t = 0; t < inst.list_count(); ++t) by_name[inst.lists[t].name] = t;
  for (const std::string& name : split_csv(spec)) {
    auto it = by_name.find(name);
    if (it == by_name.end()) {
      std::cerr << "unknown merit list '" << name << "' in --lists-order\n";
      return std::nullopt;
    }
    order.push_back(it->second);
  }
  return order;
}

std::optional<CandidateId> candidate_by_name(const Instance& inst, const std::string& name) {
  for (CandidateId c = 0; c < inst.candidate_count(); ++c)
    if (inst.candidates[c].name == name) return c;
  return std::nullopt;
}

void write_stream_or_die(const fs::path& file, const auto& writer) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + file.string());
  writer(os);
}

int cmd_allocate(const fs::path& in, const fs::path& out, bool quotas,
                 const std::string& order_spec) {
  int code = kExitOk;
  auto inst = load_or_report(in, quotas, code);
  if (!inst) return code;
  auto order = parse_lists_order(*inst, order_spec);
  if (!order) return kExitBadInput;

  fs::create_directories(out);
  CsvAuditSink sink(out / "audit.csv", *inst);
  AllocationState st(*inst, &sink, budget_from_env());
  allocate_joint(st, *order);

  write_stream_or_die(out / "allotment.csv", [&](std::ostream& os) {
    write_allotment(os, *inst, st);
  });
  write_stream_or_die(out / "unassigned.csv", [&](std::ostream& os) {
    write_unassigned(os, *inst, st);
  });
  write_stream_or_die(out / "metrics.txt", [&](std::ostream& os) { write_metrics(os, st); });

  std::size_t assigned = 0;
  for (const CandState& cs : st.cands) assigned += cs.pool != kNone;
  std::cout << "allotted " << assigned << "/" << inst->candidate_count()
            << " candidates over " << inst->pool_count() << " pools, "
            << st.op_counter << " elementary steps\n";
  return kExitOk;
}

// Stability audit of one finished run; deferred-acceptance diffs are reported
// but only stability failures are fatal.
int verify_once(const Instance& inst, bool quotas, const std::vector<ListId>& order,
                bool quiet, std::uint64_t& da_diffs) {
  VectorSink sink;
  AllocationState st(inst, &sink, budget_from_env());
  allocate_joint(st, order);
  try {
    replay(inst, sink.events);  // the engine's own log must replay cleanly
  } catch (const ReplayError& e) {
    throw std::logic_error(std::string("own audit log failed to replay: ") + e.what());
  }

  StabilityReport report;
  if (quotas) {
    std::vector<std::uint32_t> caps(inst.pool_count());
    for (PoolId p = 0; p < inst.pool_count(); ++p) caps[p] = st.pools[p].capacity;
    VirtualMarket mkt = to_virtual_market(inst, caps);
    Matching m;
    m.pool.resize(inst.candidate_count());
    m.rank.resize(inst.candidate_count());
    for (CandidateId c = 0; c < inst.candidate_count(); ++c) {
      m.pool[c] = st.cands[c].pool;
      m.rank[c] = st.cands[c].rank;
    }
    report = check_stability(mkt, m);
  } else {
    std::vector<PoolId> engine_pool(inst.candidate_count());
    for (CandidateId c = 0; c < inst.candidate_count(); ++c) engine_pool[c] = st.cands[c].pool;
    OracleComparison cmp = compare_with_oracle(inst, engine_pool);
    report = cmp.engine_report;
    da_diffs += cmp.diffs.size();
    if (!cmp.equal && !quiet)
      std::cout << "note: " << cmp.diffs.size()
                << " candidate(s) differ from deferred acceptance (outcome still stable "
                   "unless reported below)\n";
  }

  if (!report.clean()) {
    for (const auto& v : report.justified_envy) std::cerr << v.describe() << '\n';
    for (const auto& v : report.waste) std::cerr << v.describe() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

int cmd_verify_dir(const fs::path& in, bool quotas, const std::string& order_spec) {
  int code = kExitOk;
  auto inst = load_or_report(in, quotas, code);
  if (!inst) return code;
  auto order = parse_lists_order(*inst, order_spec);
  if (!order) return kExitBadInput;
  std::uint64_t da_diffs = 0;
  int rc = verify_once(*inst, quotas, *order, false, da_diffs);
  if (rc == kExitOk) std::cout << "stable allotment, no justified envy, no wasted seats\n";
  return rc;
}

int cmd_verify_random(std::uint64_t seeds, std::uint64_t base_seed, GenParams params) {
  std::uint64_t diffs = 0, failures = 0;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    Rng rng(base_seed + s);
    RawTables tables = generate_tables(params, rng);
    ValidationResult vr = validate_instance(tables, params.quotas);
    if (!vr.ok()) {
      std::cerr << "generated instance failed validation at seed " << base_seed + s << '\n';
      return kExitInternal;
    }
    std::vector<ListId> order;
    for (ListId t = 0; t < vr.instance->list_count(); ++t) order.push_back(t);
    if (verify_once(*vr.instance, params.quotas, order, true, diffs) != kExitOk) {
      std::cerr << "stability violation at seed " << base_seed + s << '\n';
      ++failures;
    }
  }
  std::cout << seeds << " seeds verified, " << failures << " stability failures, " << diffs
            << " candidate-assignments differing from deferred acceptance\n";
  return failures == 0 ? kExitOk : kExitInternal;
}

int cmd_gen(const fs::path& out, std::uint64_t seed, const GenParams& params) {
  Rng rng(seed);
  RawTables tables = generate_tables(params, rng);
  ValidationResult vr = validate_instance(tables, params.quotas);
  if (!vr.ok()) {
    std::cerr << "internal: generated tables failed validation\n";
    return report_errors(vr.errors), kExitInternal;
  }
  write_tables(out, tables);
  std::cout << "wrote instance with " << tables.candidates.size() << " candidates, "
            << tables.courses.size() << " course rows to " << out.string() << '\n';
  return kExitOk;
}

int cmd_bench(const std::string& sizes_spec, double mean_prefs, std::uint64_t seed) {
  std::vector<std::uint32_t> sizes;
  for (const std::string& tok : split_csv(sizes_spec)) {
    char* end = nullptr;
    unsigned long v = std::strtoul(tok.c_str(), &end, 10);
    if (tok.empty() || *end) {
      std::cerr << "bad size '" << tok << "' in --sizes\n";
      return kExitBadInput;
    }
    sizes.push_back(static_cast<std::uint32_t>(v));
  }
  std::cout << "candidates,work,op_counter,ratio,delinked_ops,seconds\n";
  for (const BenchPoint& pt : run_bench(sizes, mean_prefs, seed))
    std::cout << pt.candidates << ',' << pt.work << ',' << pt.op_counter << ',' << pt.ratio
              << ',' << pt.delinked_ops << ',' << pt.seconds << '\n';
  return kExitOk;
}

int cmd_withdraw(const fs::path& in, const fs::path& audit_file, const fs::path& out,
                 bool quotas, const std::string& names_spec) {
  int code = kExitOk;
  auto inst = load_or_report(in, quotas, code);
  if (!inst) return code;

  std::ifstream audit_in(audit_file);
  if (!audit_in) {
    std::cerr << "cannot open audit log " << audit_file.string() << '\n';
    return kExitBadInput;
  }
  std::vector<AuditEvent> events = parse_audit_log(audit_in, *inst);
  AllocationState st = replay(*inst, events);
  st.budget_c = budget_from_env();

  VectorSink fresh;
  st.sink = &fresh;
  for (const std::string& name : split_csv(names_spec)) {
    auto c = candidate_by_name(*inst, name);
    if (!c) {
      std::cerr << "unknown candidate '" << name << "'\n";
      return kExitBadInput;
    }
    withdraw(st, *c);
  }

  events.insert(events.end(), fresh.events.begin(), fresh.events.end());
  write_outputs(out, *inst, st, events);
  std::cout << "withdrew " << split_csv(names_spec).size() << " candidate(s); outputs in "
            << out.string() << '\n';
  return kExitOk;
}

int cmd_replay(const fs::path& in, const fs::path& audit_file, const fs::path& out,
               bool quotas) {
  int code = kExitOk;
  auto inst = load_or_report(in, quotas, code);
  if (!inst) return code;

  std::ifstream audit_in(audit_file);
  if (!audit_in) {
    std::cerr << "cannot open audit log " << audit_file.string() << '\n';
    return kExitBadInput;
  }
  std::vector<AuditEvent> events = parse_audit_log(audit_in, *inst);
  AllocationState st = replay(*inst, events);
  write_outputs(out, *inst, st, events);
  std::cout << "replayed " << events.size() << " events; outputs in " << out.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"waiting-list seat allocation across multiple merit lists"};
  app.require_subcommand(1);

  std::string in_dir, out_dir = "out", order_spec, names_spec, sizes_spec = "1000,10000";
  bool quotas = false;
  std::uint64_t seed = 1, seeds = 100, base_seed = 1;
  std::string audit_file;
  double mean_prefs = 0.0;
  GenParams params;

  auto add_common = [&](CLI::App* cmd, bool needs_in) {
    if (needs_in) cmd->add_option("--in", in_dir, "input table directory")->required();
    cmd->add_flag("--enable-quotas", quotas, "honor quotas.csv (female supernumerary seats)");
  };
  auto add_params = [&](CLI::App* cmd) {
    cmd->add_option("--candidates", params.candidates, "candidate count");
    cmd->add_option("--courses", params.courses, "course count");
    cmd->add_option("--lists", params.lists, "merit list count");
    cmd->add_option("--min-capacity", params.min_capacity, "per-pool capacity lower bound");
    cmd->add_option("--max-capacity", params.max_capacity, "per-pool capacity upper bound");
    cmd->add_option("--max-prefs", params.max_prefs, "preference list length upper bound");
    cmd->add_option("--mean-prefs", params.mean_prefs, "mean preference length (0 = uniform)");
    cmd->add_option("--list-membership", params.list_membership,
                    "chance a candidate joins each list");
    cmd->add_flag("--reservations", params.reservations, "generate reserved categories");
    cmd->add_option("--max-categories", params.max_categories, "top-level category bound");
    cmd->add_flag("--quotas", params.quotas, "generate female quotas");
    cmd->add_option("--max-quota", params.max_quota, "female quota upper bound");
    cmd->add_option("--female-share", params.female_share, "female candidate share");
  };

  CLI::App* alloc = app.add_subcommand("allocate", "run the joint allotment on CSV tables");
  add_common(alloc, true);
  alloc->add_option("--out", out_dir, "output directory");
  alloc->add_option("--lists-order", order_spec, "merit list processing order, e.g. L2,L1");

  CLI::App* verify = app.add_subcommand("verify", "re-run and audit stability");
  add_common(verify, false);
  verify->add_option("--in", in_dir, "input table directory (omit for --random)");
  verify->add_option("--lists-order", order_spec, "merit list processing order");
  bool random_mode = false;
  verify->add_flag("--random", random_mode, "verify generated instances instead of a directory");
  verify->add_option("--seeds", seeds, "number of random instances");
  verify->add_option("--base-seed", base_seed, "first seed");
  add_params(verify);

  CLI::App* gen = app.add_subcommand("gen", "generate a random instance as CSV tables");
  gen->add_option("--out", out_dir, "output directory")->required();
  gen->add_option("--seed", seed, "generator seed");
  add_params(gen);

  CLI::App* bench = app.add_subcommand("bench", "instance-size ladder timing and work ratios");
  bench->add_option("--sizes", sizes_spec, "comma-separated candidate counts");
  bench->add_option("--mean-prefs", mean_prefs, "mean preference list length")
      ->default_val(20.0);
  bench->add_option("--seed", seed, "instance seed");

  CLI::App* wd = app.add_subcommand("withdraw", "withdraw candidates from a finished run");
  add_common(wd, true);
  wd->add_option("--audit", audit_file, "audit log of the finished run")->required();
  wd->add_option("--out", out_dir, "output directory");
  wd->add_option("--candidates", names_spec, "comma-separated candidate ids")->required();

  CLI::App* rp = app.add_subcommand("replay", "rebuild outputs from an audit log");
  add_common(rp, true);
  rp->add_option("--audit", audit_file, "audit log to replay")->required();
  rp->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (alloc->parsed()) return cmd_allocate(in_dir, out_dir, quotas, order_spec);
    if (verify->parsed()) {
      if (random_mode) return cmd_verify_random(seeds, base_seed, params);
      if (in_dir.empty()) {
        std::cerr << "verify needs --in or --random\n";
        return kExitBadInput;
      }
      return cmd_verify_dir(in_dir, quotas, order_spec);
    }
    if (gen->parsed()) return cmd_gen(out_dir, seed, params);
    if (bench->parsed()) return cmd_bench(sizes_spec, mean_prefs, seed);
    if (wd->parsed()) return cmd_withdraw(in_dir, audit_file, out_dir, quotas, names_spec);
    if (rp->parsed()) return cmd_replay(in_dir, audit_file, out_dir, quotas);
  } catch (const ReplayError& e) {
    std::cerr << "audit log rejected: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const WithdrawError& e) {
    std::cerr << e.what() << '\n';
    return kExitBadInput;
  } catch (const InfeasibleParamsError& e) {
    std::cerr << "infeasible parameters: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const BudgetExceededError& e) {
    std::cerr << "internal: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::logic_error& e) {
    std::cerr << "internal: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitOk;
}
