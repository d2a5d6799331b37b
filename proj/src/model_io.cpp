#include "gaugepf/model_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

#include "gaugepf/errors.hpp"

namespace gaugepf {

namespace {

using nlohmann::json;

std::string id_string(const json& v, const std::string& what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw InputError(what + " must be a string or an integer");
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing field \"" + key + "\"");
  return *it;
}

bool is_canonical_integer(const std::string& s) {
  if (s.empty() || s.size() > 18) return false;
  if (s.size() > 1 && s[0] == '0') return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

nlohmann::ordered_json id_json(const std::string& name) {
  using OJ = nlohmann::ordered_json;
  return is_canonical_integer(name) ? OJ(std::stoll(name)) : OJ(name);
}

// "<edge>+", "<edge>-" or "<edge>" followed by U+2212
bool split_directed_name(const std::string& s, std::string& edge, Polarity& polarity) {
  static const std::string kUnicodeMinus = "\xE2\x88\x92";
  if (s.size() >= 4 && s.compare(s.size() - 3, 3, kUnicodeMinus) == 0) {
    edge = s.substr(0, s.size() - 3);
    polarity = Polarity::Minus;
    return true;
  }
  if (s.size() >= 2 && (s.back() == '+' || s.back() == '-')) {
    edge = s.substr(0, s.size() - 1);
    polarity = s.back() == '+' ? Polarity::Plus : Polarity::Minus;
    return true;
  }
  return false;
}

}  // namespace

MultiGM parse_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("model document must be a JSON object");
  bool default_soft = true;
  if (auto it = doc.find("soft"); it != doc.end()) {
    if (!it->is_boolean()) throw InputError("\"soft\" must be a boolean");
    default_soft = it->get<bool>();
  }

  const json& jnodes = require(doc, "nodes", "model");
  if (!jnodes.is_array()) throw InputError("\"nodes\" must be a list");
  std::vector<Node> nodes;
  std::map<std::string, NodeId> node_ids;
  for (const json& v : jnodes) {
    const std::string name = id_string(v, "node id");
    const NodeId id{static_cast<std::uint32_t>(nodes.size())};
    if (!node_ids.emplace(name, id).second) throw InputError("duplicate node id '" + name + "'");
    nodes.push_back({id, name});
  }

  const json& jedges = require(doc, "edges", "model");
  if (!jedges.is_array()) throw InputError("\"edges\" must be a list");
  std::vector<Edge> edges;
  std::map<std::string, EdgeId> edge_ids;
  for (std::size_t k = 0; k < jedges.size(); ++k) {
    const json& je = jedges[k];
    const std::string where = "edge #" + std::to_string(k);
    if (!je.is_object()) throw InputError(where + " must be an object");
    const std::string name = id_string(require(je, "id", where), where + " id");
    auto endpoint = [&](const char* key) {
      const std::string n = id_string(require(je, key, where), where + " " + key);
      auto it = node_ids.find(n);
      if (it == node_ids.end()) throw InputError("edge '" + name + "' refers to unknown node '" + n + "'");
      return it->second;
    };
    const EdgeId id{static_cast<std::uint32_t>(edges.size())};
    if (!edge_ids.emplace(name, id).second) throw InputError("duplicate edge id '" + name + "'");
    edges.push_back({id, endpoint("tail"), endpoint("head"), name});
  }

  MultiGraph graph(nodes, edges);

  const json& jfactors = require(doc, "factors", "model");
  if (!jfactors.is_object()) throw InputError("\"factors\" must be an object keyed by node id");
  for (auto it = jfactors.begin(); it != jfactors.end(); ++it) {
    if (!node_ids.count(it.key())) throw InputError("factor given for unknown node '" + it.key() + "'");
  }

  std::vector<FactorTable> factors;
  for (const Node& node : graph.nodes()) {
    const std::string where = "factor of node '" + node.name + "'";
    auto fit = jfactors.find(node.name);
    if (fit == jfactors.end()) throw InputError("missing " + where);
    const json& jf = *fit;
    if (!jf.is_object()) throw InputError(where + " must be an object");

    bool soft = default_soft;
    if (auto s = jf.find("soft"); s != jf.end()) {
      if (!s->is_boolean()) throw InputError(where + ": \"soft\" must be a boolean");
      soft = s->get<bool>();
    }

    const json& jorder = require(jf, "order", where);
    if (!jorder.is_array()) throw InputError(where + ": \"order\" must be a list");
    std::vector<DirectedEdgeId> order;
    for (const json& d : jorder) {
      if (!d.is_string()) throw InputError(where + ": order entries must be strings");
      std::string edge_name;
      Polarity polarity;
      if (!split_directed_name(d.get<std::string>(), edge_name, polarity)) {
        throw InputError(where + ": '" + d.get<std::string>() + "' is not a directed-edge name like 'e+' or 'e-'");
      }
      auto eit = edge_ids.find(edge_name);
      if (eit == edge_ids.end()) throw InputError(where + ": order names unknown edge '" + edge_name + "'");
      order.push_back({eit->second, polarity});
    }
    if (order.size() > 24) throw InputError(where + ": too many incident directed edges");

    const json& jtable = require(jf, "table", where);
    if (!jtable.is_object()) throw InputError(where + ": \"table\" must be an object keyed by bitstrings");
    const std::size_t k = order.size();
    std::vector<double> values(std::size_t{1} << k, 0.0);
    std::vector<bool> seen(values.size(), false);
    for (auto t = jtable.begin(); t != jtable.end(); ++t) {
      const std::string& key = t.key();
      if (key.size() != k || key.find_first_not_of("01") != std::string::npos) {
        throw InputError(where + ": key '" + key + "' is not a bitstring of length " + std::to_string(k));
      }
      std::size_t index = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (key[i] == '1') index |= std::size_t{1} << i;
      }
      if (!t.value().is_number()) throw InputError(where + ": entry '" + key + "' is not a number");
      const double v = t.value().get<double>();
      if (!std::isfinite(v) || v < 0.0) {
        throw InputError(where + ": entry '" + key + "' must be finite and nonnegative");
      }
      values[index] = v;
      seen[index] = true;
    }
    if (soft) {
      for (std::size_t s = 0; s < seen.size(); ++s) {
        if (!seen[s]) {
          throw InputError(where + ": table is incomplete; mark sparse tables with \"soft\": false");
        }
      }
    }
    try {
      factors.push_back(reorder_table(graph.incidence(node.id), order, values));
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  return MultiGM(std::move(graph), std::move(factors));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MultiGM load_model(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_model(text);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json model_to_json(const MultiGM& m) {
  const MultiGraph& g = m.graph();
  nlohmann::ordered_json doc;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const Node& n : g.nodes()) doc["nodes"].push_back(id_json(n.name));
  doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : g.edges()) {
    doc["edges"].push_back(
        {{"id", id_json(e.name)}, {"tail", id_json(g.node(e.tail).name)}, {"head", id_json(g.node(e.head).name)}});
  }
  doc["factors"] = nlohmann::ordered_json::object();
  for (std::size_t n = 0; n < g.num_nodes(); ++n) {
    const FactorTable& f = m.factor_at(n);
    nlohmann::ordered_json order = nlohmann::ordered_json::array();
    for (const DirectedEdgeId& d : f.variables()) order.push_back(directed_edge_name(g, d));
    nlohmann::ordered_json table = nlohmann::ordered_json::object();
    for (std::size_t s = 0; s < f.size(); ++s) {
      std::string key(f.arity(), '0');
      for (std::size_t i = 0; i < f.arity(); ++i) {
        if ((s >> i) & 1U) key[i] = '1';
      }
      table[key] = f[s];
    }
    doc["factors"][g.nodes()[n].name] = {{"order", std::move(order)}, {"table", std::move(table)}};
  }
  return doc;
}

std::string serialize_model(const MultiGM& m) { return model_to_json(m).dump(2) + "\n"; }

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* kHex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace gaugepf
