#include "cadjust/cli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cadjust/construct.hpp"
#include "cadjust/criterion.hpp"
#include "cadjust/graph_io.hpp"
#include "cadjust/oracle.hpp"
#include "cadjust/paths.hpp"
#include "cadjust/reachability.hpp"
#include "cadjust/sem.hpp"

namespace cadjust::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string graph_path;
  std::string x, y, z, s, exclude;
  std::string format = "text";
  std::string criterion = "cac";
  std::string method = "adjust";
  std::string relation = "possde";
  std::string filter = "all";
  bool literal = false;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  if (list.find_first_not_of(" \t") == std::string::npos) return out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty node name in list '" + list + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

NodeSet parse_set(const MixedGraph& g, const std::string& list) { return g.node_set(split_names(list)); }

json names(const MixedGraph& g, const NodeSet& s) { return g.names_of(s); }

json path_json(const MixedGraph& g, const PathWitness& p) {
  json statuses = json::array();
  for (NodeStatus st : p.statuses) statuses.push_back(std::string(to_string(st)));
  return {{"nodes", g.names_of(p.nodes)}, {"statuses", statuses}, {"text", path_to_string(g, p.nodes)}};
}

json report_json(const MixedGraph& g, const CriterionReport& r) {
  json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["clause"] = r.clause ? json(std::string(to_string(*r.clause))) : json(nullptr);
  j["witness_node"] = r.witness_node ? json(g.name(*r.witness_node)) : json(nullptr);
  j["witness_path"] = r.witness_path ? path_json(g, *r.witness_path) : json(nullptr);
  return j;
}

std::string set_text(const MixedGraph& g, const NodeSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& n : g.names_of(s)) {
    out += (first ? "" : ", ") + n;
    first = false;
  }
  return out + "}";
}

std::string report_text(const MixedGraph& g, const CriterionReport& r) {
  std::string out = "verdict: " + std::string(to_string(r.verdict));
  if (r.clause) out += " (" + std::string(to_string(*r.clause)) + ")";
  out += '\n';
  if (r.witness_node) out += "witness node: " + g.name(*r.witness_node) + '\n';
  if (r.witness_path) out += "witness path: " + path_to_string(g, r.witness_path->nodes) + '\n';
  return out;
}

int report_exit(const CriterionReport& r) {
  if (r.verdict == Verdict::Satisfied) return kOk;
  if (r.verdict == Verdict::Inapplicable || r.clause == Clause::NotAmenable) return kOutOfScope;
  return kNegative;
}

struct Context {
  const Options& opt;
  MixedGraph g;
  std::ostream& out;
  bool as_json;

  NodeSet set(const std::string& list) const { return parse_set(g, list); }
  json query_json(const Query& q) const {
    return {{"x", names(g, q.x)}, {"y", names(g, q.y)}, {"z", names(g, q.z)}, {"s", names(g, q.s)}};
  }
  Query query() const {
    Query q{set(opt.x), set(opt.y), set(opt.z), set(opt.s)};
    if (q.x.empty() || q.y.empty()) throw InputError("--x and --y must name at least one node");
    require_disjoint(g, {&q.x, &q.y, &q.z, &q.s});
    return q;
  }
  void emit(json j, const std::string& text) const {
    if (as_json) {
      out << j.dump(2) << '\n';
    } else {
      out << text;
    }
  }
};

int cmd_check(const Context& c) {
  const Query q = c.query();
  CriterionReport r;
  if (c.opt.criterion == "cac") {
    r = check_conditional_adjustment(c.g, q);
  } else if (c.opt.criterion == "ac") {
    r = check_unconditional_adjustment(c.g, q.x, q.y, q.s | q.z);
  } else {
    if (c.g.graph_class() != GraphClass::Dag) throw PreconditionError("the back-door criterion needs a DAG");
    r = check_conditional_backdoor(c.g, q);
  }
  json j = report_json(c.g, r);
  j["command"] = "check";
  j["criterion"] = c.opt.criterion;
  j["graph_class"] = std::string(to_string(c.g.graph_class()));
  j["query"] = c.query_json(q);
  c.emit(j, report_text(c.g, r));
  return report_exit(r);
}

int cmd_exists(const Context& c) {
  Query q = c.query();
  if (!q.s.empty()) throw InputError("exists does not take --s");
  const ExistsResult res = exists_conditional_adjustment(c.g, q.x, q.y, q.z);
  json j = report_json(c.g, res.report);
  j["command"] = "exists";
  j["query"] = c.query_json(q);
  j["exists"] = res.set.has_value();
  j["set"] = res.set ? names(c.g, *res.set) : json(nullptr);
  std::string text = res.set ? "exists: " + set_text(c.g, *res.set) + '\n' : "exists: no\n";
  if (!res.set) text += report_text(c.g, res.report);
  c.emit(j, text);
  if (res.set) return kOk;
  return report_exit(res.report);
}

int cmd_construct(const Context& c) {
  const Query q = c.query();
  if (!q.s.empty()) throw InputError("construct does not take --s");
  const bool pag = c.g.graph_class() == GraphClass::Pag;
  ConstructedSet set;
  if (c.opt.method == "parent") {
    set = parent_adjustment(c.g, q.x, q.y, q.z);
  } else if (c.opt.method == "oset") {
    set = o_set(c.g, q.x, q.y, q.z);
  } else {
    set = pag ? adjust_set_pag(c.g, q.x, q.y, q.z) : adjust_set_mpdag(c.g, q.x, q.y, q.z);
  }
  set = apply_exclusion(c.g, q.x, q.y, q.z, std::move(set), c.set(c.opt.exclude));
  json j;
  j["command"] = "construct";
  j["method"] = c.opt.method;
  j["kind"] = std::string(to_string(set.kind));
  j["query"] = c.query_json(q);
  j["set"] = names(c.g, set.members);
  j["preconditions_met"] = set.preconditions_met;
  j["reasons"] = set.reasons;
  j["check"] = report_json(c.g, set.check);
  std::string text = "set: " + set_text(c.g, set.members) + '\n';
  for (const auto& reason : set.reasons) text += "note: " + reason + '\n';
  c.emit(j, text);
  return set.preconditions_met ? kOk : kNegative;
}

int cmd_relate(const Context& c) {
  static const std::map<std::string, Relation> kRelations{
      {"pa", Relation::Pa}, {"posspa", Relation::PossPa}, {"an", Relation::An},
      {"de", Relation::De}, {"possan", Relation::PossAn}, {"possde", Relation::PossDe}};
  const NodeSet x = c.set(c.opt.x);
  if (x.empty()) throw InputError("--x must name at least one node");
  NodeSet result;
  json j;
  if (auto it = kRelations.find(c.opt.relation); it != kRelations.end()) {
    result = relation(c.g, it->second, x);
  } else {
    const NodeSet y = c.set(c.opt.y);
    if (y.empty()) throw InputError("--y is required for " + c.opt.relation);
    result = c.opt.relation == "mediators" ? possible_mediators(c.g, x, y) : forbidden_set(c.g, x, y);
    j["y"] = names(c.g, y);
  }
  j["command"] = "relate";
  j["relation"] = c.opt.relation;
  j["x"] = names(c.g, x);
  j["result"] = names(c.g, result);
  c.emit(j, set_text(c.g, result) + '\n');
  return kOk;
}

int cmd_paths(const Context& c) {
  const NodeSet x = c.set(c.opt.x);
  const NodeSet y = c.set(c.opt.y);
  if (x.empty() || y.empty()) throw InputError("--x and --y must name at least one node");
  const PathFilter filter = c.opt.filter == "noncausal" ? PathFilter::NonCausal
                            : c.opt.filter == "causal"  ? PathFilter::PossiblyCausal
                                                        : PathFilter::All;
  const auto paths = enumerate_proper_definite_status_paths(c.g, x, y, filter);
  json list = json::array();
  std::string text;
  for (const auto& p : paths) {
    list.push_back(path_json(c.g, p));
    text += path_to_string(c.g, p.nodes) + '\n';
  }
  c.emit({{"command", "paths"}, {"filter", c.opt.filter}, {"count", paths.size()}, {"paths", list}}, text);
  return kOk;
}

int cmd_sep(const Context& c) {
  const NodeSet a = c.set(c.opt.x);
  const NodeSet b = c.set(c.opt.y);
  const NodeSet z = c.set(c.opt.z);
  if (a.empty() || b.empty()) throw InputError("--x and --y must name at least one node");
  const SeparationVerdict v = m_separated(c.g, a, b, z);
  json j{{"command", "sep"}, {"separated", v.separated}};
  j["witness_path"] = v.witness ? path_json(c.g, *v.witness) : json(nullptr);
  std::string text = v.separated ? "separated\n" : "not separated\nopen path: " +
                                                         path_to_string(c.g, v.witness->nodes) + '\n';
  c.emit(j, text);
  return v.separated ? kOk : kNegative;
}

int cmd_verify(const Context& c) {
  const Query q = c.query();
  EnumerationOptions opts;
  opts.literal = c.opt.literal;
  const ClassVerification v = verify_criterion_across_class(c.g, q, opts);
  json member = json::array();
  for (bool ok : v.member_satisfied) member.push_back(ok ? "satisfied" : "violated");
  json j{{"command", "verify"},
         {"query", c.query_json(q)},
         {"graph_verdict", std::string(to_string(v.graph_verdict))},
         {"dag_count", v.member_satisfied.size()},
         {"member_verdicts", member},
         {"discrepancies", v.discrepancies},
         {"agree", v.agree()}};
  std::string text = "graph verdict: " + std::string(to_string(v.graph_verdict)) + '\n' +
                     "dags checked: " + std::to_string(v.member_satisfied.size()) + '\n' +
                     "discrepancies: " + std::to_string(v.discrepancies) + '\n';
  c.emit(j, text);
  return v.agree() ? kOk : kNegative;
}

int cmd_enumerate(const Context& c) {
  EnumerationOptions opts;
  opts.literal = c.opt.literal;
  const DagClass cls = enumerate_dag_extensions(c.g, opts);
  json graphs = json::array();
  std::string text;
  for (std::size_t i = 0; i < cls.members.size(); ++i) {
    const std::string s = serialize_graph(cls.members[i]);
    graphs.push_back(s);
    if (i > 0) text += "---\n";
    text += s;
  }
  c.emit({{"command", "enumerate"}, {"count", cls.members.size()}, {"graphs", graphs}}, text);
  return kOk;
}

int cmd_sem(const Context& c) {
  const Query q = c.query();
  std::vector<MixedGraph> dags;
  if (c.g.graph_class() == GraphClass::Dag) {
    dags.push_back(c.g);
  } else if (c.g.graph_class() == GraphClass::Mpdag) {
    dags = enumerate_dag_extensions(c.g).members;
  } else {
    throw PreconditionError("SEM verification needs a DAG or MPDAG");
  }
  double mean_gap = 0.0;
  double cov_gap = 0.0;
  for (const MixedGraph& d : dags) {
    const IdentityReport r = verify_adjustment_identity(d, q, c.opt.trials, c.opt.seed);
    mean_gap = std::max(mean_gap, r.max_mean_gap);
    cov_gap = std::max(cov_gap, r.max_cov_gap);
  }
  const bool holds = mean_gap < 1e-8 && cov_gap < 1e-8;
  const std::string verdict = holds ? "identity-holds" : "identity-fails";
  json j{{"command", "sem"},     {"query", c.query_json(q)}, {"verdict", verdict},
         {"max_mean_gap", mean_gap}, {"max_cov_gap", cov_gap},   {"trials", c.opt.trials},
         {"seed", c.opt.seed},   {"dag_count", dags.size()}};
  std::ostringstream text;
  text << "verdict: " << verdict << "\nmax mean gap: " << mean_gap << "\nmax cov gap: " << cov_gap << '\n';
  c.emit(j, text.str());
  return holds ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Conditional adjustment in DAGs, MPDAGs and PAGs", "cadjust"};
  app.require_subcommand(1);

  std::map<CLI::App*, std::function<int(const Context&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help, std::function<int(const Context&)> fn,
                 bool query = true) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("-g,--graph", opt.graph_path, "graph file")->required();
    sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "text"}));
    if (query) {
      sub->add_option("--x", opt.x, "treatment nodes, comma separated");
      sub->add_option("--y", opt.y, "outcome nodes");
      sub->add_option("--z", opt.z, "conditioning nodes");
    }
    handlers[sub] = std::move(fn);
    return sub;
  };

  add("check", "test a set against a criterion", cmd_check)
      ->add_option("--criterion", opt.criterion)
      ->check(CLI::IsMember({"cac", "ac", "backdoor"}));
  app.get_subcommand("check")->add_option("--s", opt.s, "adjustment nodes");
  add("exists", "decide whether a conditional adjustment set exists", cmd_exists);
  auto* construct = add("construct", "build an adjustment set", cmd_construct);
  construct->add_option("--method", opt.method)->check(CLI::IsMember({"parent", "adjust", "oset"}));
  construct->add_option("--exclude", opt.exclude, "nodes that may not be used");
  add("relate", "ancestral relations", cmd_relate)
      ->add_option("--relation", opt.relation)
      ->check(CLI::IsMember({"pa", "posspa", "an", "de", "possan", "possde", "mediators", "forb"}));
  add("paths", "proper definite-status paths from X to Y", cmd_paths)
      ->add_option("--filter", opt.filter)
      ->check(CLI::IsMember({"all", "noncausal", "causal"}));
  add("sep", "m-separation of X and Y given Z", cmd_sep);
  auto* verify = add("verify", "compare the criterion with every DAG in the class", cmd_verify);
  verify->add_option("--s", opt.s, "adjustment nodes");
  verify->add_flag("--literal", opt.literal, "skip the unshielded collider filter");
  add("enumerate", "list the DAGs represented by an MPDAG", cmd_enumerate, false)
      ->add_flag("--literal", opt.literal, "skip the unshielded collider filter");
  auto* sem = add("sem", "check the adjustment identity in linear Gaussian SEMs", cmd_sem);
  sem->add_option("--s", opt.s, "adjustment nodes");
  sem->add_option("--trials", opt.trials)->check(CLI::PositiveNumber);
  sem->add_option("--seed", opt.seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    Context ctx{opt, read_graph_file(opt.graph_path), out, opt.format == "json"};
    return handlers.at(chosen)(ctx);
  } catch (const PreconditionError& e) {
    if (opt.format == "json") {
      out << json{{"command", chosen->get_name()}, {"status", "precondition-failed"}, {"reason", e.what()}}.dump(2)
          << '\n';
    } else {
      out << "precondition failed: " << e.what() << '\n';
    }
    return kOutOfScope;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const GraphError& e) {
    err << "invalid graph: " << e.what() << '\n';
  } catch (const QueryError& e) {
    err << "invalid query: " << e.what() << '\n';
  } catch (const EnumerationCapError& e) {
    err << "enumeration cap: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

}  // namespace cadjust::cli
