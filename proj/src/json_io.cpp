#include "discrex/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "discrex/format.hpp"

namespace discrex {

using Json = nlohmann::ordered_json;

namespace {

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "JSON parse error at line " << line << ", column " << col << ": " << e.what();
    throw InputError(os.str());
  }
}

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string(where) + " is missing \"" + key + "\"");
  return j.at(key);
}

std::string text_of(const Json& j, const char* where) {
  if (!j.is_string()) throw InputError(std::string(where) + " must be a string");
  return j.get<std::string>();
}

std::string id_of(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError("node ids must be strings or integers");
}

double bound(const Json& j, double unbounded) {
  if (j.is_null()) return unbounded;
  if (!j.is_number()) throw InputError("interval bounds must be numbers or null");
  return j.get<double>();
}

Json bound_json(double x) { return std::isinf(x) ? Json(nullptr) : Json(x); }

TablePtr table_from(const Json& vars) {
  if (!vars.is_array()) throw InputError("\"variables\" must be an array");
  auto table = std::make_shared<VariableTable>();
  for (const auto& v : vars) {
    Variable var;
    var.name = text_of(field(v, "name", "variable"), "variable name");
    const Json& states = field(v, "states", "variable");
    if (!states.is_array()) throw InputError("states of '" + var.name + "' must be an array");
    for (const auto& s : states) var.states.push_back(text_of(s, "state name"));
    if (v.contains("intervals")) {
      for (const auto& iv : v.at("intervals")) {
        if (!iv.is_array() || iv.size() != 2)
          throw InputError("intervals of '" + var.name + "' must be [lower, upper] pairs");
        const double inf = std::numeric_limits<double>::infinity();
        var.intervals.push_back({bound(iv[0], -inf), bound(iv[1], inf)});
      }
    }
    table->add(std::move(var));
  }
  return table;
}

Json table_json(const VariableTable& table) {
  Json out = Json::array();
  for (const auto& v : table) {
    Json j;
    j["name"] = v.name;
    j["states"] = v.states;
    if (!v.intervals.empty()) {
      Json ivs = Json::array();
      for (const auto& iv : v.intervals) ivs.push_back({bound_json(iv.lower), bound_json(iv.upper)});
      j["intervals"] = ivs;
    }
    out.push_back(j);
  }
  return out;
}

StateMask states_from(const VariableTable& table, VarId var, const Json& j) {
  if (!j.is_array()) throw InputError("states of '" + table[var].name + "' must be an array");
  StateMask m = 0;
  for (const auto& s : j) m |= state_bit(table.state(var, text_of(s, "state name")));
  return m;
}

Json states_json(const VariableTable& table, VarId var, StateMask m) {
  Json out = Json::array();
  for (std::size_t s = 0; s < table.arity(var); ++s)
    if (m & state_bit(s)) out.push_back(table[var].states[s]);
  return out;
}

Json literal_json(const VariableTable& table, const Literal& l) {
  Json j;
  j["var"] = table[l.var()].name;
  j["states"] = states_json(table, l.var(), l.states());
  return j;
}

template <Junction J>
Json set_json(const VariableTable& table, const std::vector<LiteralSet<J>>& set) {
  Json out = Json::array();
  for (const auto& s : set) {
    Json lits = Json::array();
    for (const auto& l : s) lits.push_back(literal_json(table, l));
    out.push_back(lits);
  }
  return out;
}

NodeId formula_from(Circuit& c, const Json& j) {
  const VariableTable& table = c.table();
  if (j.is_boolean()) return j.get<bool>() ? Circuit::top : Circuit::bottom;
  if (!j.is_object()) throw InputError("formula nodes must be booleans or objects");
  if (j.contains("var")) {
    const VarId v = table.id(text_of(j.at("var"), "literal variable"));
    return c.literal(Literal(table, v, states_from(table, v, field(j, "states", "literal"))));
  }
  for (const char* op : {"and", "or"}) {
    if (!j.contains(op)) continue;
    std::vector<NodeId> ch;
    for (const auto& x : j.at(op)) ch.push_back(formula_from(c, x));
    return op[0] == 'a' ? c.conjoin(std::move(ch)) : c.disjoin(std::move(ch));
  }
  if (j.contains("not")) return negate(c, formula_from(c, j.at("not")));
  throw InputError("formula node needs one of \"var\", \"and\", \"or\", \"not\"");
}

Json circuit_json(const Circuit& c, NodeId root) {
  std::unordered_map<NodeId, std::size_t> renumber;
  Json nodes = Json::array();
  for (NodeId id : topological_order(c, root)) {
    const Node& n = c.node(id);
    const std::size_t mine = renumber.size();
    renumber.emplace(id, mine);
    Json j;
    j["id"] = mine;
    switch (n.kind) {
    case NodeKind::True: j["kind"] = "true"; break;
    case NodeKind::False: j["kind"] = "false"; break;
    case NodeKind::Leaf:
      j["kind"] = "literal";
      j["var"] = c.table()[n.literal->var()].name;
      j["states"] = states_json(c.table(), n.literal->var(), n.literal->states());
      break;
    case NodeKind::And:
    case NodeKind::Or: {
      j["kind"] = n.kind == NodeKind::And ? "and" : "or";
      Json ch = Json::array();
      for (NodeId x : n.children) ch.push_back(renumber.at(x));
      j["children"] = ch;
    }
    }
    nodes.push_back(j);
  }
  Json out;
  out["root"] = renumber.at(root);
  out["nodes"] = nodes;
  out["text"] = format_circuit(c, root);
  return out;
}

} // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

DecisionGraph graph_from_json(const std::string& text) {
  const Json doc = parse(text);
  TablePtr table = table_from(field(doc, "variables", "graph"));
  std::vector<std::string> classes;
  for (const auto& c : field(doc, "classes", "graph")) classes.push_back(text_of(c, "class"));
  std::vector<GraphNode> nodes;
  for (const auto& j : field(doc, "nodes", "graph")) {
    GraphNode n;
    n.id = id_of(field(j, "id", "node"));
    if (j.contains("class")) {
      n.label = text_of(j.at("class"), "class");
    } else {
      n.var = table->id(text_of(field(j, "var", "test node"), "variable"));
      for (const auto& e : field(j, "edges", "test node")) {
        n.edges.push_back(
            {states_from(*table, n.var, field(e, "states", "edge")), id_of(field(e, "to", "edge"))});
      }
    }
    nodes.push_back(std::move(n));
  }
  return DecisionGraph(std::move(table), std::move(classes), std::move(nodes),
                       id_of(field(doc, "root", "graph")));
}

std::string graph_to_json(const DecisionGraph& g) {
  const VariableTable& table = g.table();
  Json doc;
  doc["variables"] = table_json(table);
  doc["classes"] = g.classes();
  Json nodes = Json::array();
  for (const auto& n : g.nodes()) {
    Json j;
    j["id"] = n.id;
    if (n.is_leaf()) {
      j["class"] = *n.label;
    } else {
      j["var"] = table[n.var].name;
      Json edges = Json::array();
      for (const auto& e : n.edges) {
        Json ej;
        ej["states"] = states_json(table, n.var, e.states);
        ej["to"] = e.to;
        edges.push_back(ej);
      }
      j["edges"] = edges;
    }
    nodes.push_back(j);
  }
  doc["nodes"] = nodes;
  doc["root"] = g.root();
  return doc.dump(2) + "\n";
}

FormulaDocument formula_from_json(const std::string& text) {
  const Json doc = parse(text);
  FormulaDocument out;
  out.circuit = std::make_shared<Circuit>(table_from(field(doc, "variables", "formula document")));
  out.root = formula_from(*out.circuit, field(doc, "formula", "formula document"));
  return out;
}

std::string formula_to_json(const Circuit& c, NodeId root) {
  std::unordered_map<NodeId, Json> tree;
  for (NodeId id : topological_order(c, root)) {
    const Node& n = c.node(id);
    switch (n.kind) {
    case NodeKind::True: tree[id] = true; break;
    case NodeKind::False: tree[id] = false; break;
    case NodeKind::Leaf: tree[id] = literal_json(c.table(), *n.literal); break;
    case NodeKind::And:
    case NodeKind::Or: {
      // Sorted by text so the output does not depend on arena ids.
      std::vector<std::pair<std::string, NodeId>> order;
      for (NodeId x : n.children) order.emplace_back(tree.at(x).dump(), x);
      std::sort(order.begin(), order.end());
      Json ch = Json::array();
      for (const auto& [text, x] : order) ch.push_back(tree.at(x));
      Json j;
      j[n.kind == NodeKind::And ? "and" : "or"] = ch;
      tree[id] = j;
    }
    }
  }
  Json doc;
  doc["variables"] = table_json(c.table());
  doc["formula"] = tree.at(root);
  return doc.dump(2) + "\n";
}

bool looks_like_graph(const std::string& text) {
  const Json doc = parse(text);
  return doc.is_object() && doc.contains("nodes");
}

Instance instance_from_assignments(const VariableTable& table,
                                   const std::vector<std::pair<std::string, std::string>>& kv) {
  std::vector<int> states(table.size(), -1);
  for (const auto& [name, state] : kv) {
    const VarId v = table.id(name);
    if (states[v] >= 0) throw InputError("variable '" + name + "' assigned twice");
    states[v] = table.state(v, state);
  }
  std::vector<StateId> w;
  for (VarId v = 0; v < table.size(); ++v) {
    if (states[v] < 0) throw InputError("instance leaves '" + table[v].name + "' unassigned");
    w.push_back(static_cast<StateId>(states[v]));
  }
  return Instance(std::move(w));
}

Instance instance_from_json(const VariableTable& table, const std::string& text) {
  const Json doc = parse(text);
  if (!doc.is_object()) throw InputError("an instance must be a JSON object");
  std::vector<std::pair<std::string, std::string>> kv;
  for (const auto& [k, v] : doc.items()) kv.emplace_back(k, text_of(v, "instance state"));
  return instance_from_assignments(table, kv);
}

std::string report_to_json(const ExplanationReport& r, ReportPart part) {
  const VariableTable& table = r.table();
  const bool all = part == ReportPart::all;
  Json doc;
  if (!r.decision.empty()) doc["decision"] = r.decision;
  Json inst = Json::object();
  for (VarId v = 0; v < table.size(); ++v) inst[table[v].name] = table[v].states[r.instance[v]];
  doc["instance"] = inst;
  if (all || part == ReportPart::sr) doc["sufficient_reasons"] = set_json(table, r.srs);
  if (all || part == ReportPart::nr) doc["necessary_reasons"] = set_json(table, r.nrs);
  if (all || part == ReportPart::gsr) doc["general_sufficient_reasons"] = set_json(table, r.gsrs);
  if (all || part == ReportPart::gnr) doc["general_necessary_reasons"] = set_json(table, r.gnrs);
  if (all || part == ReportPart::general)
    doc["general_reason"] = circuit_json(*r.circuit, r.general_reason);
  if (all || part == ReportPart::complete)
    doc["complete_reason"] = circuit_json(*r.circuit, r.complete_reason);
  if (all) doc["methods"] = {{"gsr", r.gsr_method}, {"gnr", r.gnr_method}};
  return doc.dump(2) + "\n";
}

} // namespace discrex
