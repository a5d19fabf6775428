#include "pgarcs/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "pgarcs/arcs.hpp"
#include "pgarcs/classify.hpp"
#include "pgarcs/condense.hpp"
#include "pgarcs/error.hpp"
#include "pgarcs/solver.hpp"

namespace pgarcs {

using json = nlohmann::json;

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

namespace {

struct RunConfig {
  std::string subcommand;
  std::optional<int> q;
  std::string field;
  std::vector<std::string> inputs;
  std::string group_path;
  std::string system_path;
  std::optional<int> r;
  std::optional<int> n;
  std::optional<long long> target;
  double budget = 60.0;
  double budget_per_class = 5000.0;
  int threads = 1;
  bool deterministic = false;
  std::string out;
  std::string resume;
  std::vector<int> skip;
  double heuristic = 0.0;
  std::uint64_t seed = 1;
  std::uint64_t node_limit = 0;
  std::string arc_out;
  std::string data_dir = PGARCS_DATA_DIR;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + cfg.out);
  file << text;
}

FieldSpec resolve_field(const RunConfig& cfg) {
  if (!cfg.field.empty()) {
    FieldSpec spec = parse_field_spec(cfg.field);
    Field check(spec);  // validates primality and irreducibility
    if (cfg.q && *cfg.q != check.q()) throw DomainError("--q disagrees with --field");
    return check.spec();
  }
  if (!cfg.q) throw DomainError("a field is required: pass --q or --field");
  return default_field_spec(*cfg.q);
}

json report_header(const RunConfig& cfg, const std::map<std::string, std::string>& digests) {
  json j;
  j["tool"] = "pgarcs";
  j["version"] = kToolVersion;
  j["command"] = cfg.subcommand;
  json inputs = json::object();
  for (const auto& [path, digest] : digests) inputs[path] = digest;
  j["inputs"] = inputs;
  return j;
}

std::string kv_header(const RunConfig& cfg, const std::map<std::string, std::string>& digests) {
  std::ostringstream out;
  out << "tool=pgarcs\nversion=" << kToolVersion << "\ncommand=" << cfg.subcommand << '\n';
  for (const auto& [path, digest] : digests) out << "input." << path << '=' << digest << '\n';
  return out.str();
}

std::string bits(const std::vector<std::uint8_t>& x) {
  std::string s;
  s.reserve(x.size());
  for (auto v : x) s.push_back(v ? '1' : '0');
  return s;
}

// Admission with the column action, falling back to the transposed action.
std::pair<std::optional<Group>, ActionConvention> admitted_group(const Arc& arc, const std::vector<GroupElement>& gens) {
  const Field& field = arc.plane->field();
  Group column = Group::closure(field, gens);
  if (admits_group(arc, column)) return {std::move(column), ActionConvention::Column};
  std::vector<GroupElement> transposed;
  for (const auto& g : gens) transposed.push_back(transpose(field, g));
  Group row = Group::closure(field, transposed);
  if (admits_group(arc, row)) return {std::move(row), ActionConvention::Transposed};
  return {std::nullopt, ActionConvention::Column};
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const std::string& path = cfg.inputs.at(0);
  const std::string text = read_file(path);
  std::map<std::string, std::string> digests{{path, digest_hex(text)}};
  ArcFile file = parse_arc_file(text);
  std::vector<GroupElement> gens = file.generators;
  bool has_group = !gens.empty() || file.group.has_value();
  bool admitted = file.group_admitted;
  ActionConvention convention = file.convention;
  if (!cfg.group_path.empty()) {
    const std::string gtext = read_file(cfg.group_path);
    digests[cfg.group_path] = digest_hex(gtext);
    gens = parse_generators(file.arc.plane->field(), gtext);
    auto [group, conv] = admitted_group(file.arc, gens);
    has_group = true;
    admitted = group.has_value();
    convention = conv;
  }
  ArcReport report = verify_arc(file.arc);
  if (has_group) report.group_admitted = admitted;

  json j = report_header(cfg, digests);
  j["field"] = to_string(file.spec);
  j["q"] = file.spec.order();
  j["r_claimed"] = *file.arc.r_claimed;
  json rep;
  rep["n"] = report.n;
  rep["max_multiplicity"] = report.max_multiplicity;
  rep["lines_at_max"] = report.lines_at_max;
  rep["is_arc_for_claimed_r"] = report.is_arc_for_claimed_r;
  rep["group_admitted"] = report.group_admitted ? json(*report.group_admitted) : json(nullptr);
  j["report"] = rep;
  if (has_group) {
    j["group_generators"] = static_cast<int>(gens.size());
    j["action_convention"] = to_string(convention);
  }
  emit(j.dump(2) + "\n", cfg, out);
  const bool ok = report.is_arc_for_claimed_r && (!has_group || admitted);
  return ok ? kExitOk : kExitError;
}

struct Prescribed {
  std::shared_ptr<const Plane> plane;
  std::optional<Group> group;
  OrbitData orbits;
};

Prescribed prescribe(const RunConfig& cfg, std::map<std::string, std::string>& digests) {
  Prescribed pr;
  pr.plane = std::make_shared<const Plane>(Field(resolve_field(cfg)));
  std::vector<GroupElement> gens;
  if (!cfg.group_path.empty()) {
    const std::string gtext = read_file(cfg.group_path);
    digests[cfg.group_path] = digest_hex(gtext);
    gens = parse_generators(pr.plane->field(), gtext);
  }
  pr.group = Group::closure(pr.plane->field(), gens);
  pr.orbits = orbits(*pr.plane, *pr.group);
  return pr;
}

std::string histogram(const std::vector<int>& lengths) {
  std::map<int, int> h;
  for (int v : lengths) ++h[v];
  std::ostringstream out;
  bool first = true;
  for (const auto& [len, count] : h) {
    out << (first ? "" : " ") << len << 'x' << count;
    first = false;
  }
  return out.str();
}

int cmd_condense(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.r) throw DomainError("condense requires --r");
  std::map<std::string, std::string> digests;
  const Prescribed pr = prescribe(cfg, digests);
  CondensedSystem sys = condense(*pr.plane, pr.orbits, *cfg.r);
  if (pr.orbits.point_orbits.size() != pr.orbits.line_orbits.size()) {
    throw std::logic_error("point and line orbit counts differ");
  }
  std::ostringstream summary;
  summary << kv_header(cfg, digests) << "field=" << to_string(pr.plane->field().spec()) << '\n'
          << "group_order=" << pr.group->order() << '\n'
          << "ell=" << sys.ell << '\n'
          << "point_orbits=" << pr.orbits.point_orbits.size() << '\n'
          << "line_orbits=" << pr.orbits.line_orbits.size() << '\n'
          << "orbit_lengths=" << histogram(sys.w) << '\n';
  if (cfg.out.empty()) {
    err << summary.str();
    out << format_condensed(sys);
  } else {
    emit(format_condensed(sys), cfg, out);
    out << summary.str();
  }
  return kExitOk;
}

SolveOptions solve_options(const RunConfig& cfg) {
  SolveOptions so;
  so.budget_seconds = cfg.budget;
  so.threads = cfg.threads;
  so.deterministic = cfg.deterministic;
  so.heuristic_share = cfg.heuristic;
  so.seed = cfg.seed;
  so.node_limit = cfg.node_limit;
  return so;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  std::map<std::string, std::string> digests;
  IlpModel model;
  std::optional<Prescribed> pr;
  std::string field_text;
  int r = 0;
  if (!cfg.system_path.empty()) {
    const std::string text = read_file(cfg.system_path);
    digests[cfg.system_path] = digest_hex(text);
    const CondensedSystem sys = parse_condensed(text);
    model = make_model(sys);
    r = sys.r;
    field_text = "q=" + std::to_string(sys.q);
  } else {
    if (!cfg.r) throw DomainError("solve requires --r (or --system)");
    pr = prescribe(cfg, digests);
    const CondensedSystem sys = condense(*pr->plane, pr->orbits, *cfg.r);
    model = make_model(sys);
    r = *cfg.r;
    field_text = to_string(pr->plane->field().spec());
  }
  const SolveOptions so = solve_options(cfg);
  const Solution sol = cfg.target ? solve_feasible(model, *cfg.target, so) : solve_max(model, so);

  std::ostringstream kv;
  kv << kv_header(cfg, digests) << "field=" << field_text << '\n'
     << "ell=" << model.cols() << '\n'
     << "r=" << r << '\n';
  if (cfg.target) kv << "target=" << *cfg.target << '\n';
  kv << "status=" << to_string(sol.status) << '\n'
     << "objective=" << sol.objective << '\n';
  if (sol.upper_bound != std::numeric_limits<long long>::max()) kv << "upper_bound=" << sol.upper_bound << '\n';
  kv << "x=" << bits(sol.x) << '\n' << "nodes=" << sol.nodes_explored << '\n';
  if (!cfg.deterministic) kv << "time=" << sol.wall_time << '\n';
  emit(kv.str(), cfg, out);

  if (!cfg.arc_out.empty()) {
    if (!pr) throw DomainError("--arc-out needs a field and group, not --system");
    if (sol.objective > 0) {
      Arc arc = make_arc(pr->plane, expand_solution(pr->orbits, sol.x));
      arc.r_claimed = verify_arc(arc).max_multiplicity;
      std::ofstream file(cfg.arc_out);
      if (!file) throw std::runtime_error("cannot write " + cfg.arc_out);
      file << format_arc_file(arc, pr->group->generators());
    }
  }
  return sol.status == SolveStatus::Timeout ? kExitUndecided : kExitOk;
}

int cmd_exclude(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.q || !cfg.r || !cfg.n) throw DomainError("exclude requires --q, --r and --n");
  ExclusionOptions eo;
  eo.budget_per_class = cfg.budget_per_class;
  eo.skip = cfg.skip;
  eo.threads = cfg.threads;
  eo.deterministic = cfg.deterministic || cfg.threads == 1;
  eo.checkpoint_path = cfg.resume;
  const ExclusionReport rep = run_exclusion(*cfg.q, *cfg.r, *cfg.n, eo);

  json j = report_header(cfg, {});
  j["field"] = to_string(default_field_spec(*cfg.q));
  j["q"] = rep.q;
  j["r"] = rep.r;
  j["n"] = rep.n;
  j["budget_per_class"] = cfg.budget_per_class;
  j["classes_total"] = rep.total_classes;
  j["classes_nontrivial"] = rep.total_classes - 1;
  j["subgroup_classes_total"] = rep.subgroup_classes;
  j["excluded"] = rep.excluded;
  j["undecided"] = rep.undecided;
  j["found"] = rep.found;
  j["verdict"] = to_string(rep.verdict);
  json classes = json::array();
  for (const auto& o : rep.outcomes) {
    json c;
    c["id"] = o.class_id;
    c["subgroup"] = o.subgroup_id;
    c["order"] = o.projective_order;
    if (o.skipped) {
      c["status"] = "Skipped";
    } else {
      c["status"] = to_string(o.status);
      c["ell"] = o.ell;
      c["objective"] = o.objective;
      c["nodes"] = o.nodes;
      if (!cfg.deterministic) c["seconds"] = o.seconds;
    }
    classes.push_back(c);
  }
  j["classes"] = classes;
  emit(j.dump(2) + "\n", cfg, out);
  return rep.verdict == Verdict::RigidOrNonexistent ? kExitOk : kExitUndecided;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.q) throw DomainError("classify requires --q");
  const auto classes = enumerate_cyclic_classes(*cfg.q);
  std::ostringstream text;
  text << "# tool=pgarcs version=" << kToolVersion << " command=classify q=" << *cfg.q << '\n'
       << "# count=" << classes.size() << " nontrivial=" << classes.size() - 1
       << " subgroup_classes=" << count_subgroup_classes(classes) << '\n'
       << "# id order g00 g01 g02 g10 g11 g12 g20 g21 g22 subgroup=<id>\n";
  for (const auto& c : classes) {
    text << c.id << ' ' << c.projective_order;
    for (Element v : c.generator.mat) text << ' ' << v;
    text << " subgroup=" << c.subgroup_id << '\n';
  }
  emit(text.str(), cfg, out);
  return kExitOk;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.r) throw DomainError("oracle requires --r");
  std::map<std::string, std::string> digests;
  const Prescribed pr = prescribe(cfg, digests);
  const IlpModel model = make_model(condense(*pr.plane, pr.orbits, *cfg.r));
  const Solution sol = exhaustive_oracle(model);
  std::ostringstream kv;
  kv << kv_header(cfg, digests) << "field=" << to_string(pr.plane->field().spec()) << '\n'
     << "ell=" << model.cols() << '\n'
     << "r=" << *cfg.r << '\n'
     << "objective=" << sol.objective << '\n'
     << "x=" << bits(sol.x) << '\n';
  emit(kv.str(), cfg, out);
  return kExitOk;
}

int cmd_code(const RunConfig& cfg, std::ostream& out) {
  const std::string& path = cfg.inputs.at(0);
  const std::string text = read_file(path);
  const ArcFile file = parse_arc_file(text);
  const ArcReport rep = verify_arc(file.arc);
  const int d = min_distance(file.arc.plane->field(), to_generator_matrix(file.arc));
  const int q = file.spec.order();
  json j = report_header(cfg, {{path, digest_hex(text)}});
  j["field"] = to_string(file.spec);
  j["q"] = q;
  j["n"] = rep.n;
  j["k"] = 3;
  j["d"] = d;
  j["observed_r"] = rep.max_multiplicity;
  j["code"] = "[" + std::to_string(rep.n) + ", 3, " + std::to_string(d) + "]_" + std::to_string(q);
  j["distance_matches_n_minus_r"] = d == rep.n - rep.max_multiplicity;
  emit(j.dump(2) + "\n", cfg, out);
  return d == rep.n - rep.max_multiplicity ? kExitOk : kExitError;
}

std::vector<std::vector<int>> read_table(const std::string& path) {
  std::vector<std::vector<int>> rows;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream cells(line);
    std::vector<int> row;
    int v = 0;
    while (cells >> v) row.push_back(v);
    if (row.size() != 4) throw std::runtime_error("bad table row in " + path + ": " + line);
    rows.push_back(row);
  }
  return rows;
}

int cmd_tables(const RunConfig& cfg, std::ostream& out) {
  namespace fs = std::filesystem;
  const fs::path data(cfg.data_dir);
  const auto t1_path = (data / "tables" / "table1.tsv").string();
  const auto t2_path = (data / "tables" / "table2.tsv").string();
  const auto table1 = read_table(t1_path);
  const auto table2 = read_table(t2_path);
  std::ostringstream text;
  text << "# tool=pgarcs version=" << kToolVersion << " command=tables\n"
       << "# improved lower bounds, cross-checked against the corpus\n"
       << "# q r old new corpus_n observed_r group_admitted result\n";
  bool all_ok = true;
  for (const auto& row : table1) {
    const int q = row[0], r = row[1], old_bound = row[2], new_bound = row[3];
    const fs::path arc_path = data / "corpus" /
                              ("q" + std::to_string(q) + "_r" + std::to_string(r) + "_n" + std::to_string(new_bound) + ".arc");
    text << q << ' ' << r << ' ' << old_bound << ' ' << new_bound << ' ';
    try {
      const ArcFile file = load_arc_file(arc_path.string());
      const ArcReport rep = verify_arc(file.arc);
      const bool ok = rep.n == new_bound && rep.max_multiplicity == r && file.group_admitted && new_bound > old_bound;
      all_ok = all_ok && ok;
      text << rep.n << ' ' << rep.max_multiplicity << ' ' << (file.group_admitted ? "true" : "false") << ' '
           << (ok ? "PASS" : "FAIL") << '\n';
    } catch (const std::exception& e) {
      all_ok = false;
      text << "- - - FAIL (" << e.what() << ")\n";
    }
  }
  text << "# open cases: m_r(2,q) in [lower, upper]\n# q r lower upper\n";
  for (const auto& row : table2) text << row[0] << ' ' << row[1] << ' ' << row[2] << ' ' << row[3] << '\n';
  emit(text.str(), cfg, out);
  return all_ok ? kExitOk : kExitError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct, verify and bound (n,r)-arcs in PG(2,q)", "pgarcs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  RunConfig cfg;

  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--q", cfg.q, "Field order (prime power)");
    sub->add_option("--field", cfg.field, "Field spec 'p=<p> e=<e> poly=<a0>,...,<ae>'");
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "Write the report here instead of stdout"); };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--budget", cfg.budget, "Time budget in seconds")->check(CLI::PositiveNumber);
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--deterministic", cfg.deterministic, "Single-threaded reproducible run");
  };

  auto* verify = app.add_subcommand("verify", "Verify an arc file (and its group)");
  verify->add_option("arc", cfg.inputs, "Arc file")->required()->expected(1);
  verify->add_option("--group", cfg.group_path, "Group file overriding the arc file's group");
  add_out(verify);

  auto* cond = app.add_subcommand("condense", "Write the orbit-condensed system for a prescribed group");
  add_field(cond);
  cond->add_option("--group", cfg.group_path, "Group file (trivial group if omitted)");
  cond->add_option("--r", cfg.r, "Line multiplicity bound")->required();
  add_out(cond);

  auto* solve = app.add_subcommand("solve", "Maximize (or reach --target on) a condensed system");
  add_field(solve);
  solve->add_option("--group", cfg.group_path, "Group file (trivial group if omitted)");
  solve->add_option("--system", cfg.system_path, "Condensed-system file instead of field and group");
  solve->add_option("--r", cfg.r, "Line multiplicity bound");
  solve->add_option("--target", cfg.target, "Stop at the first solution of this size");
  solve->add_option("--heuristic", cfg.heuristic, "Share of the budget for local search before branching")
      ->check(CLI::Range(0.0, 1.0));
  solve->add_option("--seed", cfg.seed, "Local search seed");
  solve->add_option("--node-limit", cfg.node_limit, "Stop after this many nodes");
  solve->add_option("--arc-out", cfg.arc_out, "Write the best arc found as an arc file");
  add_solver(solve);
  add_out(solve);

  auto* exclude = app.add_subcommand("exclude", "Exclude cyclic automorphism groups of putative arcs (prime q)");
  exclude->add_option("--q", cfg.q, "Prime field order")->required();
  exclude->add_option("--r", cfg.r, "Line multiplicity bound")->required();
  exclude->add_option("--n", cfg.n, "Arc size to exclude")->required();
  exclude->add_option("--budget-per-class", cfg.budget_per_class, "Seconds per subgroup class")
      ->check(CLI::PositiveNumber);
  exclude->add_option("--threads", cfg.threads, "Classes solved in parallel")->check(CLI::PositiveNumber);
  exclude->add_flag("--deterministic", cfg.deterministic, "Sequential run, no timings in the report");
  exclude->add_option("--resume", cfg.resume, "Checkpoint file to append to and resume from");
  exclude->add_option("--skip", cfg.skip, "Class ids to leave out");
  add_out(exclude);

  auto* classify = app.add_subcommand("classify", "List conjugacy class representatives of PGL(3,q)");
  classify->add_option("--q", cfg.q, "Prime field order")->required();
  add_out(classify);

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for small systems");
  add_field(oracle);
  oracle->add_option("--group", cfg.group_path, "Group file (trivial group if omitted)");
  oracle->add_option("--r", cfg.r, "Line multiplicity bound")->required();
  add_out(oracle);

  auto* code = app.add_subcommand("code", "Parameters of the linear code of an arc");
  code->add_option("arc", cfg.inputs, "Arc file")->required()->expected(1);
  add_out(code);

  auto* tables = app.add_subcommand("tables", "Cross-check the bound tables against the corpus");
  tables->add_option("--data", cfg.data_dir, "Data directory with tables/ and corpus/");
  add_out(tables);

  std::vector<std::string> storage{"pgarcs"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (cfg.deterministic && cfg.threads != 1) throw DomainError("--deterministic requires --threads 1");
    if (cfg.subcommand == "verify") return cmd_verify(cfg, out);
    if (cfg.subcommand == "condense") return cmd_condense(cfg, out, err);
    if (cfg.subcommand == "solve") return cmd_solve(cfg, out);
    if (cfg.subcommand == "exclude") return cmd_exclude(cfg, out);
    if (cfg.subcommand == "classify") return cmd_classify(cfg, out);
    if (cfg.subcommand == "oracle") return cmd_oracle(cfg, out);
    if (cfg.subcommand == "code") return cmd_code(cfg, out);
    if (cfg.subcommand == "tables") return cmd_tables(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  err << "error: unknown subcommand\n";
  return kExitError;
}

}  // namespace pgarcs
