#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "merlab/catalog/catalog.hpp"
#include "merlab/cli/cli.hpp"
#include "merlab/error.hpp"
#include "merlab/logic/eval.hpp"
#include "merlab/logic/parser.hpp"
#include "merlab/reduct/reduct.hpp"
#include "merlab/synth/synth.hpp"

namespace merlab::cli {

using Json = nlohmann::ordered_json;
using logic::BijectionFamily;
using logic::Element;
using logic::SortId;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string command;
  std::vector<std::string> positional;
  std::string mer, theory, structure, left, right, formula, tuple, replay;
  std::string max, decoupled_max, sizes;
  std::optional<std::size_t> tuple_len, k, level;
  std::uint64_t seed = 0;
  bool seed_given = false;
  unsigned threads = 1;
  std::uint64_t budget = Budget::kDefaultLimit;
  std::string format = "json";
};

// "S=3,T=2" or a bare "3" (key "*"). Primes on sort names are dropped.
std::map<std::string, std::size_t> assignments(const std::string& text, const char* flag) {
  std::map<std::string, std::size_t> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    std::string key = eq == std::string::npos ? "*" : item.substr(0, eq);
    const std::string value = eq == std::string::npos ? item : item.substr(eq + 1);
    if (!key.empty() && key.back() == '\'') key.pop_back();
    std::size_t n = 0;
    try {
      std::size_t used = 0;
      n = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + value + "' is not a size");
    }
    if (!out.emplace(key, n).second) throw UsageError(std::string(flag) + ": '" + key + "' given twice");
  }
  return out;
}

void check_keys(const std::map<std::string, std::size_t>& a, const logic::Vocabulary& v, const char* flag) {
  for (const auto& [key, n] : a)
    if (key != "*" && !v.find_sort(key)) throw UsageError(std::string(flag) + ": unknown sort '" + key + "'");
}

mer::Scale scale_of(const Options& o, const MerSpec& spec) {
  const auto& v = spec.vocabulary();
  if (o.max.empty()) throw UsageError("--max is required");
  const auto max = assignments(o.max, "--max");
  const auto dec = assignments(o.decoupled_max, "--decoupled-max");
  check_keys(max, v, "--max");
  check_keys(dec, v, "--decoupled-max");
  mer::Scale s;
  for (SortId i = 0; i < v.sort_count(); ++i) {
    const auto& name = v.sort_name(i);
    std::optional<std::size_t> bound;
    if (max.contains(name)) bound = max.at(name);
    else if (!spec.sig.is_coupled(i) && dec.contains(name)) bound = dec.at(name);
    else if (!spec.sig.is_coupled(i) && dec.contains("*")) bound = dec.at("*");
    else if (max.contains("*")) bound = max.at("*");
    if (!bound) throw UsageError("no bound for sort '" + name + "'; give it in --max or --decoupled-max");
    s.max.push_back(*bound);
  }
  s.validate(v.sort_count());
  return s;
}

std::vector<std::size_t> sizes_of(const std::string& text, const logic::Vocabulary& v, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  const auto a = assignments(text, flag);
  check_keys(a, v, flag);
  std::vector<std::size_t> out;
  for (SortId i = 0; i < v.sort_count(); ++i) {
    const auto& name = v.sort_name(i);
    if (a.contains(name)) out.push_back(a.at(name));
    else if (a.contains("*")) out.push_back(a.at("*"));
    else throw UsageError(std::string(flag) + ": no size for sort '" + name + "'");
  }
  return out;
}

Json sizes_json(const logic::Vocabulary& v, const std::vector<std::size_t>& sizes) {
  Json j = Json::object();
  for (SortId i = 0; i < v.sort_count(); ++i) j[v.sort_name(i)] = sizes[i];
  return j;
}

Json scale_json(const logic::Vocabulary& v, const mer::Scale& s) {
  Json j = Json::object();
  j["max"] = sizes_json(v, s.max);
  if (!s.min.empty()) j["min"] = sizes_json(v, s.min);
  return j;
}

Json structures_json(const std::vector<FiniteStructure>& ms) {
  Json j = Json::array();
  for (const auto& m : ms) j.push_back(logic::to_literal(m));
  return j;
}

Json morphism_json(const logic::Vocabulary& v, const std::vector<bool>& coupled, const BijectionFamily& f,
                   const std::vector<std::size_t>& sizes) {
  Json j = Json::object();
  for (SortId s = 0; s < v.sort_count(); ++s) {
    if (!coupled[s]) continue;
    Json perm = Json::array();
    for (Element e = 0; e < sizes[s]; ++e) perm.push_back(f.apply(s, e));
    j[v.sort_name(s)] = perm;
  }
  return j;
}

Json tuple_json(const std::vector<synth::Point>& t, const logic::Vocabulary& v) {
  Json j = Json::array();
  for (const auto& [s, e] : t) j.push_back(v.sort_name(s) + ":" + std::to_string(e));
  return j;
}

Json index_lists(const std::vector<std::vector<std::size_t>>& xs) {
  Json j = Json::array();
  for (const auto& x : xs) j.push_back(x);
  return j;
}

std::vector<Element> element_list(const std::string& text) {
  std::vector<Element> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      out.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw UsageError("--tuple: '" + item + "' is not an element");
    }
  }
  return out;
}

struct Context {
  const Options& o;
  Budget budget;
  std::optional<Workspace> ws;

  explicit Context(const Options& opts) : o(opts), budget(opts.budget) {}

  const Workspace& workspace() {
    if (!ws) {
      if (o.positional.empty()) throw UsageError(o.command + " needs a DSL file");
      ws = load_workspace(o.positional[0]);
    }
    return *ws;
  }
  const MerSpec& spec() {
    if (o.mer.empty()) throw UsageError(o.command + " needs --mer");
    return workspace().mer(o.mer);
  }
  Theory theory() {
    const auto& s = spec();
    if (o.theory.empty()) return Theory::empty(s.sig.vocab);
    const auto& t = workspace().theory(o.theory);
    if (!(t.vocabulary() == s.vocabulary()))
      throw ValidationError("theory '" + o.theory + "' and mer '" + o.mer + "' are over different vocabularies");
    return t;
  }
  const FiniteStructure& structure(const std::string& name, const char* flag) {
    if (name.empty()) throw UsageError(o.command + " needs " + flag);
    return workspace().structure(name);
  }
  std::size_t tuple_len() const {
    if (!o.tuple_len) throw UsageError(o.command + " needs --tuple-len");
    return *o.tuple_len;
  }
};

Json verdict_json(const mer::ErVerdict& v) {
  Json j = Json::object();
  j["verdict"] = v.holds ? "holds" : "fails";
  if (!v.holds) {
    j["counterexample"] = Json{{"kind", v.kind}, {"witnesses", structures_json(v.witnesses)}, {"detail", v.detail}};
  }
  j["models_checked"] = v.models_checked;
  j["assignments_checked"] = v.assignments_checked;
  return j;
}

void check_er(Context& c, Json& r) {
  const auto& spec = c.spec();
  if (!c.o.replay.empty()) {
    std::ifstream in(c.o.replay);
    if (!in) throw UsageError("cannot read '" + c.o.replay + "'");
    Json report;
    try {
      report = Json::parse(in);
    } catch (const std::exception& e) {
      throw ParseError(c.o.replay + ": " + e.what(), 0, 0);
    }
    if (!report.contains("counterexample")) throw ValidationError(c.o.replay + " holds no counterexample");
    const auto& ce = report["counterexample"];
    mer::ErVerdict v;
    v.holds = false;
    v.kind = ce.at("kind").get<std::string>();
    for (const auto& lit : ce.at("witnesses")) v.witnesses.push_back(parse_structure_literal(lit.get<std::string>(), spec.sig.vocab));
    r["replay"] = Json{{"kind", v.kind},
                       {"witnesses", structures_json(v.witnesses)},
                       {"revalidated", mer::replay_counterexample(spec, v)}};
    return;
  }
  const auto scale = scale_of(c.o, spec);
  r["scale"] = scale_json(spec.vocabulary(), scale);
  if (std::holds_alternative<mer::ByApproxReduct>(spec.effective().form)) {
    auto a = mer::check_approx_reduct(spec, c.theory(), scale, c.budget, c.o.threads);
    r.update(verdict_json(a.verdict));
    r["tightest_below_eps"] = mer::to_string(a.tightest_below_eps);
  } else {
    r.update(verdict_json(mer::check_equivalence_relation(spec, c.theory(), scale, c.budget, c.o.threads)));
  }
}

void groupoid(Context& c, Json& r) {
  const auto& spec = c.spec();
  const auto& v = spec.vocabulary();
  if (!c.o.left.empty() || !c.o.right.empty()) {
    const auto& m = c.structure(c.o.left, "--left");
    const auto& n = c.structure(c.o.right, "--right");
    auto fs = mer::groupoid_morphisms(spec, m, n, c.budget);
    r["left"] = c.o.left;
    r["right"] = c.o.right;
    r["count"] = fs.size();
    Json arr = Json::array();
    for (const auto& f : fs) arr.push_back(morphism_json(v, spec.sig.coupled, f, m.sizes()));
    r["morphisms"] = arr;
    return;
  }
  const auto scale = scale_of(c.o, spec);
  r["scale"] = scale_json(v, scale);
  auto g = mer::check_groupoid_laws(spec, c.theory(), scale, c.budget, c.o.threads);
  r["verdict"] = g.holds ? "holds" : "fails";
  if (!g.holds) {
    Json ms = Json::array();
    for (const auto& f : g.morphisms)
      ms.push_back(morphism_json(v, spec.sig.coupled, f, g.witnesses.empty() ? std::vector<std::size_t>(v.sort_count())
                                                                             : g.witnesses[0].sizes()));
    r["violation"] = Json{{"law", g.law}, {"witnesses", structures_json(g.witnesses)}, {"morphisms", ms}};
  }
  r["models_checked"] = g.models_checked;
}

void classes(Context& c, Json& r) {
  const auto& spec = c.spec();
  const auto sizes = sizes_of(c.o.sizes, spec.vocabulary(), "--sizes");
  r["sizes"] = sizes_json(spec.vocabulary(), sizes);
  auto cls = mer::mer_classes(spec, c.theory(), sizes, c.budget, c.o.threads);
  std::size_t models = 0;
  Json arr = Json::array();
  for (const auto& k : cls) {
    models += k.size();
    arr.push_back(structures_json(k));
  }
  r["models"] = models;
  r["class_count"] = cls.size();
  r["classes"] = arr;
}

void classify(Context& c, Json& r) {
  const auto& spec = c.spec().effective();
  std::optional<logic::Formula> sentence;
  if (const auto* s = std::get_if<mer::BySentence>(&spec.form)) sentence = s->sentence;
  if (const auto* t = std::get_if<mer::ByFamilyTower>(&spec.form); t && t->tower.levels().size() == 1)
    sentence = reduct::same_nset_sentence(t->tower.levels()[0], spec.sig);
  if (!sentence)
    throw ValidationError("classify needs a sentence or a one-level family mer; '" + c.o.mer + "' is " + spec.kind());
  r["sentence"] = logic::to_string(*sentence);
  r["prefix"] = mer::classify_prefix(*sentence).name();
}

reduct::PartitionedFormula family_for(Context& c, const FiniteStructure& m) {
  if (c.o.formula.empty()) throw UsageError(c.o.command + " needs --formula");
  return reduct::PartitionedFormula::parse(c.o.formula, m.vocabulary_ptr());
}

void nset(Context& c, Json& r) {
  const auto& m = c.structure(c.o.structure, "--structure");
  const auto pf = family_for(c, m);
  const auto v = reduct::nset_value(m, pf, c.budget);
  r["structure"] = c.o.structure;
  r["formula"] = reduct::to_string(pf);
  r["depth"] = v.depth;
  r["size"] = v.size();
  r["value"] = reduct::to_string(v);
}

void shelahize(Context& c, Json& r) {
  const auto& m = c.structure(c.o.structure, "--structure");
  const auto pf = family_for(c, m);
  const auto sh = reduct::shelahize(m, pf, c.o.level.value_or(1), c.budget);
  const auto& v = sh.structure.vocabulary();
  r["structure"] = c.o.structure;
  r["formula"] = reduct::to_string(pf);
  r["new_sort"] = v.sort_name(sh.new_sort);
  r["membership"] = v.relation(sh.membership).name;
  Json sets = Json::array();
  for (const auto& s : sh.member_sets) sets.push_back(s);
  r["member_sets"] = sets;
  r["expansion"] = logic::to_literal(sh.structure);
}

// Structures of the workspace that live inside the partition's scale.
std::vector<std::pair<std::string, const FiniteStructure*>> profiled(Context& c, const MerSpec& spec,
                                                                     const mer::Scale& scale) {
  std::vector<std::pair<std::string, const FiniteStructure*>> out;
  for (const auto& [name, m] : c.workspace().structures) {
    if (!(m.vocabulary() == spec.vocabulary())) continue;
    bool inside = true;
    for (SortId s = 0; s < m.vocabulary().sort_count(); ++s) inside = inside && m.size(s) <= scale.max[s];
    if (inside) out.emplace_back(name, &m);
  }
  return out;
}

void invariants(Context& c, Json& r) {
  const auto& spec = c.spec();
  const auto scale = scale_of(c.o, spec);
  const auto len = c.tuple_len();
  r["scale"] = scale_json(spec.vocabulary(), scale);
  r["tuple_len"] = len;
  const auto theory = c.theory();
  auto part = synth::groupoid_type_quotient(spec, theory, scale, len, c.budget, c.o.threads);
  r["points"] = part.points().size();
  r["class_count"] = part.class_count();
  Json classes = Json::array();
  for (const auto& k : part.classes()) {
    Json cls = Json::array();
    for (auto i : k) cls.push_back(part.points()[i].encoding());
    classes.push_back(cls);
  }
  r["partition"] = classes;
  Json profiles = Json::object();
  for (const auto& [name, m] : profiled(c, spec, scale)) {
    try {
      profiles[name] = synth::invariant_profile(*m, part, len).to_string();
    } catch (const ValidationError& e) {
      profiles[name] = std::string("outside the partition: ") + e.what();
    }
  }
  r["profiles"] = profiles;
}

void ydlept(Context& c, Json& r) {
  const auto& spec = c.spec();
  const auto scale = scale_of(c.o, spec);
  const auto len = c.tuple_len();
  r["scale"] = scale_json(spec.vocabulary(), scale);
  r["tuple_len"] = len;
  auto y = synth::ydlept_at_scale(spec, c.theory(), scale, len, c.budget, c.o.threads);
  if (y.determined) r["verdict"] = "determined";
  else r["verdict"] = Json{{"counterexample", structures_json({y.counterexample->first, y.counterexample->second})}};
  r["models_checked"] = y.models_checked;
  r["class_count"] = y.class_count;
}

void density(Context& c, Json& r) {
  const auto& spec = c.spec();
  const auto& m = c.structure(c.o.structure, "--structure");
  const auto scale = scale_of(c.o, spec);
  const auto len = c.tuple_len();
  r["scale"] = scale_json(spec.vocabulary(), scale);
  r["structure"] = c.o.structure;
  r["tuple_len"] = len;
  auto part = synth::groupoid_type_quotient(spec, c.theory(), scale, len, c.budget, c.o.threads);
  auto d = synth::density_report(spec, m, part, len);
  Json tuples = Json::array();
  for (const auto& t : d.tuples) tuples.push_back(tuple_json(t, m.vocabulary()));
  r["tuples"] = tuples;
  r["orbits"] = index_lists(d.orbits);
  r["profile_classes"] = index_lists(d.profile_classes);
  r["refines"] = d.refines;
  r["equal"] = d.equal;
}

FiniteStructure generated(Context& c, Json& r) {
  const auto v = catalog::bipartite_vocabulary();
  const auto sizes = sizes_of(c.o.sizes, *v, "--sizes");
  const std::size_t k = c.o.k.value_or(1);
  r["sizes"] = sizes_json(*v, sizes);
  r["k"] = k;
  r["seed"] = c.o.seed;
  r["generator"] = "mt19937_64 min-conflicts";
  return catalog::generate_extension_graph({sizes[0], sizes[1], k, c.o.seed});
}

bool same_two_set(const FiniteStructure& a, const FiniteStructure& b) {
  const auto pf = reduct::PartitionedFormula::parse("G(x : y)", a.vocabulary_ptr());
  return reduct::nset_equal(reduct::nset_value(a, pf), reduct::nset_value(b, pf));
}

void swap_demo(Context& c, Json& r) {
  const auto g = generated(c, r);
  const auto& v = g.vocabulary_ptr();
  const std::string text = c.o.formula.empty() ? "G(x, y)" : c.o.formula;
  const auto phi = logic::parse_formula(text, v);
  const auto free = phi.free_variables();
  std::vector<Element> tuple;
  auto env_of = [&](const std::vector<Element>& t) {
    logic::Assignment env;
    for (std::size_t i = 0; i < free.size(); ++i) env[free[i].name] = t[i];
    return env;
  };
  if (!c.o.tuple.empty()) {
    tuple = element_list(c.o.tuple);
  } else {
    // Least satisfying tuple in lexicographic order.
    std::vector<std::size_t> dims;
    for (const auto& x : free) dims.push_back(g.size(x.sort));
    for (const auto& t : logic::all_tuples(dims))
      if (logic::evaluate(phi, g, env_of(t))) {
        tuple = t;
        break;
      }
    if (tuple.empty() && !free.empty()) throw ValidationError("no tuple satisfies '" + text + "' in the graph");
  }
  r["graph"] = logic::to_literal(g);
  r["formula"] = logic::to_string(phi);
  Json vars = Json::array();
  for (const auto& x : free) vars.push_back(x.name + ":" + v->sort_name(x.sort));
  r["variables"] = vars;
  r["tuple"] = tuple;
  const auto w = catalog::find_swap_witness(g, phi, tuple);
  if (!w) {
    r["witness"] = nullptr;
    return;
  }
  Json pairs = Json::array(), flipped = Json::array();
  for (const auto& [a, b] : w->pairs) pairs.push_back({a, b});
  for (const auto& [a, b] : w->flipped) flipped.push_back({a, b});
  r["witness"] = Json{{"disjunct", w->disjunct},
                      {"pairs", pairs},
                      {"flipped", flipped},
                      {"graph", logic::to_literal(w->graph)},
                      {"two_set_preserved", same_two_set(g, w->graph)},
                      {"formula_before", tuple.size() == free.size() && logic::evaluate(phi, g, env_of(tuple))},
                      {"formula_after", logic::evaluate(phi, w->graph, env_of(tuple))}};
}

void interp(Context& c, Json& r) {
  const auto& spec = c.spec();
  const auto& m = c.structure(c.o.structure, "--structure");
  const auto n = catalog::expand_interpretation(m, spec);
  r["structure"] = c.o.structure;
  r["A"] = n.size(0);
  r["B"] = n.size(1);
  Json d = Json::array();
  for (const auto& t : n.extent(2)) {
    Json ext = Json::array();
    for (Element x = 0; x < n.size(0); ++x)
      for (Element y = 0; y < n.size(0); ++y)
        if (n.holds(1, logic::Tuple{x, y, t[0]})) ext.push_back({x, y});
    d.push_back(Json{{"b", t[0]}, {"members", ext}});
  }
  r["D"] = d;
  r["round_trip"] = logic::to_literal(catalog::forget_interpretation(n)) == logic::to_literal(m);
}

Json vocabulary_json(const logic::Vocabulary& v) {
  Json rels = Json::array();
  for (const auto& rel : v.relations()) {
    Json prof = Json::array();
    for (auto s : rel.profile) prof.push_back(v.sort_name(s));
    rels.push_back(Json{{"name", rel.name}, {"profile", prof}});
  }
  return Json{{"name", v.name()}, {"sorts", v.sorts()}, {"relations", rels}};
}

void catalog_cmd(Context& c, Json& r) {
  const auto& args = c.o.positional;
  const std::string sub = args.empty() ? "list" : args[0];
  r["action"] = sub;
  if (sub == "list") {
    Json arr = Json::array();
    for (const auto& id : catalog::catalog_list()) {
      const auto& e = catalog::catalog_get(id);
      arr.push_back(Json{{"id", id}, {"kind", e.spec.kind()}, {"vocabulary", e.vocabulary->name()}});
    }
    r["entries"] = arr;
  } else if (sub == "show") {
    if (args.size() < 2) throw UsageError("catalog show needs an id");
    const auto& e = catalog::catalog_get(args[1]);
    r["id"] = e.id;
    r["vocabulary"] = vocabulary_json(*e.vocabulary);
    r["coupled"] = e.spec.sig.coupled_names();
    r["kind"] = e.spec.kind();
    Json axioms = Json::array();
    for (const auto& [label, f] : e.theory.axioms()) axioms.push_back(Json{{"label", label}, {"formula", logic::to_string(f)}});
    r["theory"] = Json{{"name", e.theory.name()}, {"axioms", axioms}};
    r["reference_scale"] = scale_json(*e.vocabulary, e.reference_scale);
    r["doc"] = e.doc;
  } else if (sub == "generate") {
    const auto g = generated(c, r);
    r["graph"] = logic::to_literal(g);
    r["verified"] = !catalog::first_extension_violation(g, c.o.k.value_or(1)).has_value();
  } else {
    throw UsageError("catalog action must be list, show or generate, got '" + sub + "'");
  }
}

using Handler = void (*)(Context&, Json&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"check-er", check_er},   {"groupoid", groupoid},       {"classes", classes},   {"classify", classify},
      {"nset", nset},           {"shelahize", shelahize},     {"invariants", invariants},
      {"ydlept-test", ydlept},  {"density", density},         {"swap-demo", swap_demo}, {"interp", interp},
      {"catalog", catalog_cmd}};
  return h;
}

// Echo of the inputs that determine the report; worker count excluded.
Json echo(const Options& o) {
  Json j = Json::object();
  if (o.command != "catalog" && o.command != "swap-demo" && !o.positional.empty()) j["file"] = o.positional[0];
  if (o.command == "catalog" && !o.positional.empty()) j["args"] = o.positional;
  auto put = [&](const char* key, const std::string& v) {
    if (!v.empty()) j[key] = v;
  };
  put("mer", o.mer);
  put("theory", o.theory);
  put("structure", o.structure);
  put("left", o.left);
  put("right", o.right);
  put("formula", o.formula);
  put("tuple", o.tuple);
  put("max", o.max);
  put("decoupled_max", o.decoupled_max);
  put("sizes", o.sizes);
  put("replay", o.replay);
  if (o.tuple_len) j["tuple_len"] = *o.tuple_len;
  if (o.k) j["k"] = *o.k;
  if (o.level) j["level"] = *o.level;
  if (o.seed_given) j["seed"] = o.seed;
  j["budget"] = o.budget;
  return j;
}

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    const bool nested = (v.is_object() && !v.empty()) ||
                        (v.is_array() && std::any_of(v.begin(), v.end(), [](const Json& x) { return x.is_object(); }));
    if (j.is_object()) out << pad << it.key() << ":";
    else out << pad << "-";
    if (nested) {
      out << "\n";
      render_text(v, out, indent + 2);
    } else {
      out << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"merlab: model equivalence relations over finite structures", "merlab"};
  app.set_version_flag("--version", std::string("merlab ") + kVersion);
  std::string commands;
  for (const auto& [name, h] : handlers()) commands += (commands.empty() ? "" : ", ") + name;
  app.add_option("command", o.command, "one of: " + commands)->required();
  app.add_option("args", o.positional, "DSL file, or catalog action and id");
  app.add_option("--mer", o.mer, "mer declared in the file");
  app.add_option("--theory", o.theory, "theory declared in the file (default: no axioms)");
  app.add_option("--structure", o.structure, "structure declared in the file");
  app.add_option("--left", o.left, "left structure for groupoid morphisms");
  app.add_option("--right", o.right, "right structure for groupoid morphisms");
  app.add_option("--formula", o.formula, "partitioned or quantifier-free formula");
  app.add_option("--tuple", o.tuple, "comma-separated elements for swap-demo");
  app.add_option("--max", o.max, "size bounds, S=3,... or one number for every sort");
  app.add_option("--decoupled-max", o.decoupled_max, "size bounds for decoupled sorts");
  app.add_option("--sizes", o.sizes, "exact sizes, S=2,...");
  app.add_option("--tuple-len", o.tuple_len, "tuple length for type spaces");
  app.add_option("--k", o.k, "extension-axiom level");
  app.add_option("--level", o.level, "Shelahization level");
  app.add_option("--seed", o.seed, "generator seed");
  app.add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--budget", o.budget, "ceiling on elementary evaluations");
  app.add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--replay", o.replay, "re-decide the counterexample of a check-er JSON report");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out, o_err;
    const int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? 0 : 2;
  }
  o.seed_given = app.count("--seed") > 0;

  auto h = handlers().find(o.command);
  if (h == handlers().end()) {
    err << "merlab: unknown command '" << o.command << "'; expected one of: " << commands << "\n";
    return 2;
  }
  try {
    Context c(o);
    Json report = Json::object();
    report["tool"] = "merlab";
    report["version"] = kVersion;
    report["command"] = o.command;
    report["input"] = echo(o);
    if (o.command != "catalog" && o.command != "swap-demo" && !o.mer.empty()) {
      const auto& spec = c.spec();
      report["mer"] = Json{{"name", spec.name}, {"kind", spec.kind()}, {"coupled", spec.sig.coupled_names()}};
    }
    h->second(c, report);
    if (o.format == "json") out << report.dump(2) << "\n";
    else render_text(report, out, 0);
    return 0;
  } catch (const ResourceLimitError& e) {
    err << "merlab: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "merlab: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace merlab::cli
