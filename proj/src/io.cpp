#include "smg/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace smg {

namespace {

bool is_label_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string where(std::size_t line, std::size_t column) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

struct Token {
  enum class Kind { Label, Op, Colon, Comma } kind;
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const char c = line[pos];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    const std::size_t col = pos + 1;
    if (is_label_char(c)) {
      std::size_t end = pos;
      while (end < line.size() && is_label_char(line[end])) ++end;
      out.push_back({Token::Kind::Label, std::string(line.substr(pos, end - pos)), col});
      pos = end;
      continue;
    }
    bool matched = false;
    for (std::string_view op : {"<->", "->", "--"}) {
      if (line.substr(pos, op.size()) == op) {
        out.push_back({Token::Kind::Op, std::string(op), col});
        pos += op.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (c == ':' || c == ',') {
      out.push_back({c == ':' ? Token::Kind::Colon : Token::Kind::Comma, std::string(1, c), col});
      ++pos;
      continue;
    }
    throw Error(ErrorKind::ParseError, where(line_no, col) + ": unexpected character '" + std::string(1, c) + "'");
  }
  return out;
}

EdgeKind kind_of_op(const std::string& op) {
  if (op == "->") return EdgeKind::Arrow;
  if (op == "<->") return EdgeKind::Arc;
  return EdgeKind::Line;
}

struct PendingEdge {
  LabeledEdge edge;
  std::size_t line;
  std::size_t column;  // column of the second endpoint
};

struct PendingMark {
  std::string label;
  std::size_t line;
  std::size_t column;
};

}  // namespace

GraphDocument parse_graph(std::string_view text, std::string name) {
  std::optional<std::vector<std::string>> declared;
  std::set<std::string> declared_set;
  std::vector<PendingEdge> edges;
  std::vector<PendingMark> marg;
  std::vector<PendingMark> cond;
  std::set<std::string> seen;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;

    const auto tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;

    if (tokens.size() >= 2 && tokens[0].kind == Token::Kind::Label && tokens[1].kind == Token::Kind::Colon) {
      const std::string& key = tokens[0].text;
      std::vector<PendingMark> names;
      for (std::size_t k = 2; k < tokens.size(); ++k) {
        if (tokens[k].kind == Token::Kind::Comma) continue;
        if (tokens[k].kind != Token::Kind::Label) {
          throw Error(ErrorKind::ParseError, where(line_no, tokens[k].column) + ": expected a node name");
        }
        names.push_back({tokens[k].text, line_no, tokens[k].column});
      }
      if (key == "nodes") {
        if (declared) throw Error(ErrorKind::ParseError, where(line_no, 1) + ": second 'nodes:' line");
        declared.emplace();
        for (const auto& n : names) {
          if (!declared_set.insert(n.label).second) {
            throw Error(ErrorKind::ParseError, where(n.line, n.column) + ": node '" + n.label + "' declared twice");
          }
          declared->push_back(n.label);
        }
      } else if (key == "marg") {
        marg.insert(marg.end(), names.begin(), names.end());
      } else if (key == "cond") {
        cond.insert(cond.end(), names.begin(), names.end());
      } else {
        throw Error(ErrorKind::ParseError, where(line_no, tokens[0].column) + ": unknown directive '" + key + "'");
      }
      continue;
    }

    if (tokens.size() != 3 || tokens[0].kind != Token::Kind::Label || tokens[1].kind != Token::Kind::Op ||
        tokens[2].kind != Token::Kind::Label) {
      const std::size_t col = tokens.size() >= 3 ? tokens[std::min<std::size_t>(3, tokens.size() - 1)].column
                                                 : tokens.back().column;
      throw Error(ErrorKind::ParseError, where(line_no, col) + ": expected '<node> <op> <node>'");
    }
    const EdgeKind kind = kind_of_op(tokens[1].text);
    if (tokens[0].text == tokens[2].text) {
      throw Error(ErrorKind::LoopEdge, where(line_no, tokens[2].column) + ": loop at node '" + tokens[0].text + "'");
    }
    LabeledEdge e{kind, tokens[0].text, tokens[2].text};
    if (kind != EdgeKind::Arrow && e.to < e.from) std::swap(e.from, e.to);
    if (!seen.insert(compact_string(e)).second) {
      throw Error(ErrorKind::DuplicateEdge, where(line_no, tokens[0].column) + ": duplicate edge " + to_string(e));
    }
    edges.push_back({e, line_no, tokens[2].column});
  }

  std::vector<std::string> nodes;
  auto require_declared = [&](const std::string& label, std::size_t line, std::size_t column) {
    if (declared && !declared_set.contains(label)) {
      throw Error(ErrorKind::UndeclaredNode, where(line, column) + ": node '" + label + "' is not declared");
    }
  };
  if (declared) nodes = *declared;
  std::set<std::string> implied;
  for (const auto& pe : edges) {
    require_declared(pe.edge.from, pe.line, pe.column);
    require_declared(pe.edge.to, pe.line, pe.column);
    implied.insert(pe.edge.from);
    implied.insert(pe.edge.to);
  }
  if (!declared) nodes.assign(implied.begin(), implied.end());

  GraphDocument doc;
  doc.name = std::move(name);
  doc.graph = MixedGraph(nodes);
  for (const auto& pe : edges) doc.graph.add_edge(pe.edge);

  auto resolve_marks = [&](const std::vector<PendingMark>& marks, std::vector<std::string>& into) {
    for (const auto& m : marks) {
      if (!doc.graph.find(m.label)) {
        throw Error(ErrorKind::UndeclaredNode, where(m.line, m.column) + ": node '" + m.label + "' is not in the graph");
      }
      into.push_back(m.label);
    }
    std::sort(into.begin(), into.end());
    into.erase(std::unique(into.begin(), into.end()), into.end());
  };
  resolve_marks(marg, doc.marginalised);
  resolve_marks(cond, doc.conditioned);
  for (const auto& m : doc.marginalised) {
    if (std::binary_search(doc.conditioned.begin(), doc.conditioned.end(), m)) {
      throw Error(ErrorKind::SpecInvalid, "node '" + m + "' is both marginalised and conditioned");
    }
  }
  return doc;
}

GraphDocument read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), path);
}

std::string serialize_graph(const GraphDocument& doc) {
  std::string out = "nodes:";
  for (const auto& l : doc.graph.labels()) out += " " + l;
  out += '\n';
  for (const Edge& e : doc.graph.edges()) out += to_string(doc.graph.labeled(e)) + '\n';
  auto marks = [&](const char* key, const std::vector<std::string>& labels) {
    if (labels.empty()) return;
    out += key;
    for (const auto& l : labels) out += " " + l;
    out += '\n';
  };
  marks("marg:", doc.marginalised);
  marks("cond:", doc.conditioned);
  return out;
}

std::string serialize_graph(const MixedGraph& g) { return serialize_graph(GraphDocument{{}, g, {}, {}}); }

namespace {

std::string_view kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::Line: return "line";
    case EdgeKind::Arc: return "arc";
    case EdgeKind::Arrow: return "arrow";
  }
  return "?";
}

}  // namespace

nlohmann::ordered_json graph_to_json(const GraphDocument& doc) {
  nlohmann::ordered_json j;
  j["nodes"] = doc.graph.labels();
  j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : doc.graph.edges()) {
    const LabeledEdge le = doc.graph.labeled(e);
    j["edges"].push_back({{"type", kind_name(e.kind)}, {"from", le.from}, {"to", le.to}});
  }
  j["marg"] = doc.marginalised;
  j["cond"] = doc.conditioned;
  return j;
}

GraphDocument graph_from_json(const nlohmann::json& j) {
  try {
    GraphDocument doc;
    doc.graph = MixedGraph(j.at("nodes").get<std::vector<std::string>>());
    for (const auto& e : j.at("edges")) {
      const auto type = e.at("type").get<std::string>();
      EdgeKind kind;
      if (type == "line") {
        kind = EdgeKind::Line;
      } else if (type == "arc") {
        kind = EdgeKind::Arc;
      } else if (type == "arrow") {
        kind = EdgeKind::Arrow;
      } else {
        throw Error(ErrorKind::ParseError, "unknown edge type '" + type + "'");
      }
      const LabeledEdge le{kind, e.at("from").get<std::string>(), e.at("to").get<std::string>()};
      if (le.from == le.to) throw Error(ErrorKind::LoopEdge, "loop at node '" + le.from + "'");
      doc.graph.add_edge(le);
    }
    if (j.contains("marg")) doc.marginalised = j["marg"].get<std::vector<std::string>>();
    if (j.contains("cond")) doc.conditioned = j["cond"].get<std::vector<std::string>>();
    for (auto* v : {&doc.marginalised, &doc.conditioned}) {
      for (const auto& l : *v) doc.graph.index_of(l);
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed graph JSON: ") + e.what());
  }
}

std::string to_dot(const MixedGraph& g) {
  std::string out = "digraph G {\n";
  for (const auto& l : g.labels()) out += "  \"" + l + "\";\n";
  for (const Edge& e : g.edges()) {
    const LabeledEdge le = g.labeled(e);
    out += "  \"" + le.from + "\" -> \"" + le.to + "\"";
    if (e.kind == EdgeKind::Line) out += " [dir=none]";
    if (e.kind == EdgeKind::Arc) out += " [dir=both]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace smg
