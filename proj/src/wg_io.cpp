#include "anchored/wg_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace anchored {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string serialize_wg(const WeightedGraph& g) {
  std::string out;
  for (Vertex v = 0; v < g.size(); ++v) {
    out += "v ";
    out += g.id(v);
    if (g.is_frontier(v)) out += " frontier";
    out += '\n';
  }
  for (const auto& e : g.edges()) {
    const std::string &a = g.id(e.u), &b = g.id(e.v);
    out += "e ";
    out += (a <= b) ? a : b;
    out += ' ';
    out += (a <= b) ? b : a;
    out += ' ';
    out += format_double(e.weight);
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> toks;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) toks.push_back(line.substr(start, i - start));
  }
  return toks;
}

}  // namespace

WeightedGraph parse_wg(std::string_view text) {
  GraphBuilder b;
  size_t pos = 0;
  int lineno = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto toks = tokenize(line);
    if (toks.empty() || toks[0].front() == '#' ||
        (toks[0].size() >= 2 && toks[0][0] == '/' && toks[0][1] == '/'))
      continue;
    if (toks[0] == "v") {
      if (toks.size() == 2) {
        b.add_vertex(toks[1], false);
      } else if (toks.size() == 3 && toks[2] == "frontier") {
        b.add_vertex(toks[1], true);
      } else {
        fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad v line");
      }
    } else if (toks[0] == "e") {
      if (toks.size() != 4)
        fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad e line");
      double w = 0.0;
      auto res = std::from_chars(toks[3].data(), toks[3].data() + toks[3].size(), w);
      if (res.ec != std::errc() || res.ptr != toks[3].data() + toks[3].size())
        fail(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": bad weight");
      b.add_edge(toks[1], toks[2], w);
    } else {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": unknown directive '" + std::string(toks[0]) + "'");
    }
  }
  return b.build();
}

WeightedGraph read_wg_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_wg(ss.str());
}

void write_wg_file(const std::string& path, const WeightedGraph& g,
                   const std::string& header_comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path + " for writing");
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  out << serialize_wg(g);
  if (!out) fail(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace anchored
