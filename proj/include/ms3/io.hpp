#pragma once

// Line-oriented text format for flow presentations.  '#' starts a comment.
//
//   [graph]
//   vertex <id>
//   edge <label> = <v1> -- <v2> orient=(fixed|free) kind=<kind>
//   [surface <id>]
//   genus <signed-int>
//   boundary <letters>               one word per line, letters `a` or `a^-1`
//   [handle <id>]
//   kind=(simple|round) index=<0..3> [height=<int>]
//   regions = <ids>                  flat boundary
//   in = <ids>                       round 1-handles use the two sides
//   out = <ids>
//   [pairs]
//   lower <letters> | <letters>
//   upper <letters> | <letters>
//   [chosen]
//   <handle-id> = <letters>
//   [tau]
//   case1 <h0> <h2> alpha=<int> beta=<int>
//   case2 <h> meridian=(<int>,<int>) [omega=(<int>,<int>)]
//   case2L edge <id> = <h1> -- <h2> mu=(<int>|inf)
//   case3 <h> cycle <letters> alpha=<int>
//
// Exactly one [graph] section, at least one [surface]; [tau] is optional.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ms3/model.hpp"

namespace ms3 {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ", col " +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

struct ValidationError : std::runtime_error {
  ValidationReport report;
  explicit ValidationError(ValidationReport r)
      : std::runtime_error("presentation violates invariants:\n" + r.to_string()),
        report(std::move(r)) {}
};

namespace detail {

struct LineCursor {
  const std::string& s;
  int line;
  std::size_t pos = 0;

  int col() const { return static_cast<int>(pos) + 1; }
  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool eol() {
    skip_ws();
    return pos >= s.size();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line, col(), msg);
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }
  bool try_consume(const std::string& word) {
    skip_ws();
    if (s.compare(pos, word.size(), word) == 0) {
      pos += word.size();
      return true;
    }
    return false;
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  std::string ident(const char* what) {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && ident_char(s[pos])) ++pos;
    if (pos == start) fail(std::string("expected ") + what);
    return s.substr(start, pos - start);
  }
  long long integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) {
      pos = start;
      fail("expected an integer");
    }
    return std::stoll(s.substr(start, pos - start));
  }
  Letter letter() {
    Letter l;
    l.label = ident("an edge letter");
    l.power = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      if (s.compare(pos, 2, "-1") != 0) fail("expected ^-1");
      pos += 2;
      l.power = -1;
    }
    return l;
  }
  // letters until end of line or one of the stop tokens
  CyclicWord word(const std::set<std::string>& stops = {}) {
    CyclicWord w;
    while (!eol()) {
      if (peek() == '|') break;
      std::size_t save = pos;
      std::string id;
      {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && ident_char(s[pos])) ++pos;
        id = s.substr(start, pos - start);
      }
      if (stops.count(id) && pos < s.size() && s[pos] == '=') {
        pos = save;
        break;
      }
      pos = save;
      w.letters.push_back(letter());
    }
    if (w.empty()) fail("expected a non-empty word");
    return w;
  }
  void end() {
    if (!eol()) fail("unexpected trailing input");
  }
};

struct Located {
  int line = 0;
};

}  // namespace detail

// Ordered section view of a document, before semantic assembly.
struct FlowDocument {
  struct Section {
    std::string kind;  // graph | surface | handle | pairs | chosen | tau
    std::string arg;   // surface or handle id
    int line = 0;
    std::vector<std::pair<int, std::string>> lines;  // (line number, text)
  };
  std::vector<Section> sections;
};

inline FlowDocument parse_document(const std::string& text) {
  FlowDocument doc;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  FlowDocument::Section* cur = nullptr;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto hash = raw.find('#');
    std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::size_t last = body.find_last_not_of(" \t");
    body = last == std::string::npos ? std::string() : body.substr(0, last + 1);
    if (body.empty()) continue;
    detail::LineCursor c{body, lineno};
    if (c.peek() == '[') {
      c.expect('[');
      std::string kind = c.ident("a section name");
      FlowDocument::Section sec;
      sec.kind = kind;
      sec.line = lineno;
      if (kind == "surface" || kind == "handle") sec.arg = c.ident("an id");
      c.expect(']');
      c.end();
      if (kind != "graph" && kind != "surface" && kind != "handle" &&
          kind != "pairs" && kind != "chosen" && kind != "tau")
        throw ParseError(lineno, 2, "unknown section [" + kind + "]");
      doc.sections.push_back(std::move(sec));
      cur = &doc.sections.back();
    } else {
      if (!cur) throw ParseError(lineno, c.col(), "content before the first section");
      cur->lines.emplace_back(lineno, body);
    }
  }
  return doc;
}

namespace detail {

struct DocBuild {
  FlowPresentation p;
  // locations for the semantic pass
  std::map<std::string, int> vertex_line, edge_line, surface_line, handle_line;
  std::vector<std::pair<int, Letter>> letter_refs;          // every word letter
  std::vector<std::pair<int, std::string>> region_refs;     // handle region ids
  std::vector<std::pair<int, std::string>> handle_refs;     // chosen/tau handles
  std::vector<std::pair<int, std::string>> vertex_refs;     // edge endpoints
};

inline void collect_word(DocBuild& b, int line, const CyclicWord& w) {
  for (const auto& l : w.letters) b.letter_refs.emplace_back(line, l);
}

inline DocBuild build_presentation(const FlowDocument& doc) {
  DocBuild b;
  int graphs = 0, surfaces = 0;
  bool saw_pairs = false, saw_chosen = false, saw_tau = false;
  int last_line = 0;
  for (const auto& sec : doc.sections) {
    last_line = sec.line;
    for (const auto& [ln, txt] : sec.lines) last_line = ln;
  }

  for (const auto& sec : doc.sections) {
    if (sec.kind == "graph") {
      if (++graphs > 1) throw ParseError(sec.line, 1, "duplicate [graph] section");
      for (const auto& [ln, txt] : sec.lines) {
        LineCursor c{txt, ln};
        std::string head = c.ident("a directive");
        if (head == "vertex") {
          std::string id = c.ident("a vertex id");
          c.end();
          if (!b.vertex_line.emplace(id, ln).second)
            throw ParseError(ln, 1, "duplicate vertex " + id);
          b.p.vertices.push_back(id);
        } else if (head == "edge") {
          EdgeRecord e;
          e.label = c.ident("an edge label");
          c.expect('=');
          e.tail = c.ident("a vertex id");
          if (!c.try_consume("--")) c.fail("expected --");
          e.head = c.ident("a vertex id");
          if (!c.try_consume("orient=")) c.fail("expected orient=");
          std::string o = c.ident("fixed or free");
          if (o == "fixed") e.orientation = Orientation::Fixed;
          else if (o == "free") e.orientation = Orientation::Free;
          else c.fail("orientation must be fixed or free");
          if (!c.try_consume("kind=")) c.fail("expected kind=");
          std::size_t kind_col = c.pos;
          std::string k;
          while (c.pos < txt.size() && (LineCursor::ident_char(txt[c.pos]) || txt[c.pos] == '-'))
            k += txt[c.pos++];
          if (k == "lower-curve") e.kind = EdgeKind::LowerCurve;
          else if (k == "upper-curve") e.kind = EdgeKind::UpperCurve;
          else if (k == "corner") e.kind = EdgeKind::Corner;
          else if (k == "tau-curve") e.kind = EdgeKind::TauCurve;
          else if (k == "chosen-cycle-curve") e.kind = EdgeKind::ChosenCycleCurve;
          else throw ParseError(ln, static_cast<int>(kind_col) + 1, "unknown edge kind " + k);
          c.end();
          if (!b.edge_line.emplace(e.label, ln).second)
            throw ParseError(ln, 1, "duplicate edge " + e.label);
          b.vertex_refs.emplace_back(ln, e.tail);
          b.vertex_refs.emplace_back(ln, e.head);
          b.p.edges.push_back(std::move(e));
        } else {
          throw ParseError(ln, 1, "unknown graph directive " + head);
        }
      }
    } else if (sec.kind == "surface") {
      ++surfaces;
      SurfaceRegion s;
      s.id = sec.arg;
      if (!b.surface_line.emplace(s.id, sec.line).second)
        throw ParseError(sec.line, 1, "duplicate surface " + s.id);
      bool saw_genus = false;
      for (const auto& [ln, txt] : sec.lines) {
        LineCursor c{txt, ln};
        std::string head = c.ident("a directive");
        if (head == "genus") {
          if (saw_genus) throw ParseError(ln, 1, "duplicate genus line");
          s.genus_signed = static_cast<int>(c.integer());
          c.end();
          saw_genus = true;
        } else if (head == "boundary") {
          CyclicWord w = c.word();
          c.end();
          collect_word(b, ln, w);
          s.boundary_words.push_back(std::move(w));
        } else {
          throw ParseError(ln, 1, "unknown surface directive " + head);
        }
      }
      if (!saw_genus) throw ParseError(sec.line, 1, "surface " + s.id + " missing genus");
      b.p.surfaces.push_back(std::move(s));
    } else if (sec.kind == "handle") {
      HandleRecord h;
      h.id = sec.arg;
      if (!b.handle_line.emplace(h.id, sec.line).second)
        throw ParseError(sec.line, 1, "duplicate handle " + h.id);
      bool saw_kind = false, saw_regions = false, saw_in = false, saw_out = false;
      for (const auto& [ln, txt] : sec.lines) {
        LineCursor c{txt, ln};
        if (c.try_consume("kind=")) {
          if (saw_kind) throw ParseError(ln, 1, "duplicate kind line");
          saw_kind = true;
          std::string k = c.ident("simple or round");
          if (k == "simple") h.kind = HandleKind::Simple;
          else if (k == "round") h.kind = HandleKind::Round;
          else c.fail("handle kind must be simple or round");
          if (!c.try_consume("index=")) c.fail("expected index=");
          h.index = static_cast<int>(c.integer());
          if (c.try_consume("height=")) h.height = static_cast<int>(c.integer());
          c.end();
          continue;
        }
        std::string head = c.ident("a directive");
        const int line_no = ln;  // lambdas may not capture structured bindings
        auto read_ids = [&](std::vector<std::string>& out) {
          c.expect('=');
          while (!c.eol()) {
            std::string id = c.ident("a region id");
            b.region_refs.emplace_back(line_no, id);
            out.push_back(std::move(id));
          }
        };
        if (head == "regions") {
          saw_regions = true;
          read_ids(h.regions);
        } else if (head == "in") {
          saw_in = true;
          read_ids(h.incoming);
        } else if (head == "out") {
          saw_out = true;
          read_ids(h.outgoing);
        } else {
          throw ParseError(ln, 1, "unknown handle directive " + head);
        }
      }
      if (!saw_kind) throw ParseError(sec.line, 1, "handle " + h.id + " missing kind line");
      if (saw_regions && (saw_in || saw_out))
        throw ParseError(sec.line, 1, "handle " + h.id + " mixes regions with in/out");
      h.partitioned = saw_in || saw_out;
      b.p.handles.push_back(std::move(h));
    } else if (sec.kind == "pairs") {
      if (saw_pairs) throw ParseError(sec.line, 1, "duplicate [pairs] section");
      saw_pairs = true;
      for (const auto& [ln, txt] : sec.lines) {
        LineCursor c{txt, ln};
        std::string head = c.ident("lower or upper");
        if (head != "lower" && head != "upper")
          throw ParseError(ln, 1, "pair lines start with lower or upper");
        CyclicWord w1 = c.word();
        c.expect('|');
        CyclicWord w2 = c.word();
        c.end();
        collect_word(b, ln, w1);
        collect_word(b, ln, w2);
        auto& list = head == "lower" ? b.p.lower_pairs : b.p.upper_pairs;
        list.emplace_back(std::move(w1), std::move(w2));
      }
    } else if (sec.kind == "chosen") {
      if (saw_chosen) throw ParseError(sec.line, 1, "duplicate [chosen] section");
      saw_chosen = true;
      for (const auto& [ln, txt] : sec.lines) {
        LineCursor c{txt, ln};
        std::string hid = c.ident("a handle id");
        c.expect('=');
        CyclicWord w = c.word();
        c.end();
        if (b.p.chosen_cycles.count(hid))
          throw ParseError(ln, 1, "duplicate chosen cycle for " + hid);
        collect_word(b, ln, w);
        b.handle_refs.emplace_back(ln, hid);
        b.p.chosen_cycles[hid] = std::move(w);
      }
    } else if (sec.kind == "tau") {
      if (saw_tau) throw ParseError(sec.line, 1, "duplicate [tau] section");
      saw_tau = true;
      for (const auto& [ln, txt] : sec.lines) {
        LineCursor c{txt, ln};
        std::string head = c.ident("a tau directive");
        auto int_pair = [&]() {
          c.expect('(');
          int x = static_cast<int>(c.integer());
          c.expect(',');
          int y = static_cast<int>(c.integer());
          c.expect(')');
          return std::pair<int, int>{x, y};
        };
        if (head == "case1") {
          TauCase1 r;
          r.handle0 = c.ident("a handle id");
          r.handle2 = c.ident("a handle id");
          if (!c.try_consume("alpha=")) c.fail("expected alpha=");
          r.alpha = static_cast<int>(c.integer());
          if (!c.try_consume("beta=")) c.fail("expected beta=");
          r.beta = static_cast<int>(c.integer());
          c.end();
          b.handle_refs.emplace_back(ln, r.handle0);
          b.handle_refs.emplace_back(ln, r.handle2);
          b.p.tau.case1.push_back(std::move(r));
        } else if (head == "case2") {
          TauCase2 r;
          r.handle = c.ident("a handle id");
          if (!c.try_consume("meridian=")) c.fail("expected meridian=");
          r.meridian = int_pair();
          if (c.try_consume("omega=")) r.omega = int_pair();
          c.end();
          b.handle_refs.emplace_back(ln, r.handle);
          b.p.tau.case2.push_back(std::move(r));
        } else if (head == "case2L") {
          if (!c.try_consume("edge")) c.fail("expected edge");
          MSEdge e;
          e.id = c.ident("an edge id");
          c.expect('=');
          e.tail = c.ident("a handle id");
          if (!c.try_consume("--")) c.fail("expected --");
          e.head = c.ident("a handle id");
          if (!c.try_consume("mu=")) c.fail("expected mu=");
          FramingValue v;
          if (c.try_consume("inf")) {
            v = FramingValue::inf();
          } else {
            v = FramingValue::of(c.integer());
          }
          c.end();
          if (b.p.tau.mu.count(e.id))
            throw ParseError(ln, 1, "duplicate L edge " + e.id);
          b.handle_refs.emplace_back(ln, e.tail);
          b.handle_refs.emplace_back(ln, e.head);
          b.p.tau.mu[e.id] = v;
          b.p.tau.graph_l.edges.push_back(std::move(e));
        } else if (head == "case3") {
          TauCase3 r;
          r.handle = c.ident("a handle id");
          if (!c.try_consume("cycle")) c.fail("expected cycle");
          r.cycle = c.word({"alpha"});
          if (!c.try_consume("alpha=")) c.fail("expected alpha=");
          r.alpha = static_cast<int>(c.integer());
          c.end();
          b.handle_refs.emplace_back(ln, r.handle);
          collect_word(b, ln, r.cycle);
          b.p.tau.case3.push_back(std::move(r));
        } else {
          throw ParseError(ln, 1, "unknown tau directive " + head);
        }
      }
    }
  }

  if (graphs == 0) throw ParseError(last_line + 1, 1, "missing [graph] section");
  if (surfaces == 0) throw ParseError(last_line + 1, 1, "missing [surface] section");

  // L vertices: endpoints of the declared L edges, roles derived from the
  // handle indices and the edge directions
  {
    std::set<std::string> vs;
    for (const auto& e : b.p.tau.graph_l.edges) {
      vs.insert(e.tail);
      vs.insert(e.head);
    }
    for (const auto& id : vs) {
      VertexRole role;
      const HandleRecord* h = b.p.find_handle(id);
      if (h && h->kind == HandleKind::Round && h->index == 0) {
        role = VertexRole::Source;
      } else if (h && h->kind == HandleKind::Round && h->index == 2) {
        role = VertexRole::Sink;
      } else {
        bool has_in = false, has_out = false;
        for (const auto& e : b.p.tau.graph_l.edges) {
          if (e.head == id) has_in = true;
          if (e.tail == id) has_out = true;
        }
        role = has_in && has_out ? VertexRole::Saddle
               : has_in          ? VertexRole::Sink
                                 : VertexRole::Source;
      }
      b.p.tau.graph_l.vertices.push_back({id, role});
    }
  }
  return b;
}

inline void semantic_pass(const DocBuild& b) {
  std::set<std::string> edges, vertices, handles;
  for (const auto& e : b.p.edges) edges.insert(e.label);
  for (const auto& v : b.p.vertices) vertices.insert(v);
  for (const auto& h : b.p.handles) handles.insert(h.id);
  std::set<std::string> regions;
  for (const auto& s : b.p.surfaces) regions.insert(s.id);

  for (const auto& [ln, v] : b.vertex_refs)
    if (!vertices.count(v)) throw ParseError(ln, 1, "unknown vertex " + v);
  for (const auto& [ln, l] : b.letter_refs)
    if (!edges.count(l.label)) throw ParseError(ln, 1, "unknown edge letter " + l.label);
  for (const auto& [ln, r] : b.region_refs)
    if (!regions.count(r)) throw ParseError(ln, 1, "unknown region " + r);
  for (const auto& [ln, h] : b.handle_refs)
    if (!handles.count(h)) throw ParseError(ln, 1, "unknown handle " + h);
}

}  // namespace detail

// Parse without running the validator; syntax errors still throw ParseError.
inline FlowPresentation parse_flow_raw(const std::string& text) {
  auto b = detail::build_presentation(parse_document(text));
  normalize(b.p);
  return std::move(b.p);
}

// Parse, resolve references with located diagnostics, and validate.
inline FlowPresentation parse_flow(const std::string& text) {
  auto b = detail::build_presentation(parse_document(text));
  detail::semantic_pass(b);
  normalize(b.p);
  auto report = validate_presentation(b.p);
  if (!report.ok()) throw ValidationError(std::move(report));
  return std::move(b.p);
}

namespace detail {

inline std::string word_text(const CyclicWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ' ';
    out += w.letters[i].label;
    if (w.letters[i].power < 0) out += "^-1";
  }
  return out;
}

}  // namespace detail

// Deterministic text form: sections and ids in sorted order; parsing the
// output reproduces the presentation exactly.
inline std::string serialize(const FlowPresentation& input) {
  FlowPresentation p = input;
  normalize(p);
  std::ostringstream os;
  os << "[graph]\n";
  for (const auto& v : p.vertices) os << "vertex " << v << "\n";
  for (const auto& e : p.edges)
    os << "edge " << e.label << " = " << e.tail << " -- " << e.head
       << " orient=" << to_token(e.orientation) << " kind=" << to_token(e.kind)
       << "\n";
  for (const auto& s : p.surfaces) {
    os << "[surface " << s.id << "]\n";
    os << "genus " << s.genus_signed << "\n";
    for (const auto& w : s.boundary_words)
      os << "boundary " << detail::word_text(w) << "\n";
  }
  for (const auto& h : p.handles) {
    os << "[handle " << h.id << "]\n";
    os << "kind=" << to_token(h.kind) << " index=" << h.index;
    if (h.height) os << " height=" << *h.height;
    os << "\n";
    auto ids = [](const std::vector<std::string>& v) {
      std::string out;
      for (const auto& s : v) out += " " + s;
      return out;
    };
    if (h.partitioned) {
      os << "in =" << ids(h.incoming) << "\n";
      os << "out =" << ids(h.outgoing) << "\n";
    } else {
      os << "regions =" << ids(h.regions) << "\n";
    }
  }
  if (!p.lower_pairs.empty() || !p.upper_pairs.empty()) {
    os << "[pairs]\n";
    for (const auto& [a, b] : p.lower_pairs)
      os << "lower " << detail::word_text(a) << " | " << detail::word_text(b) << "\n";
    for (const auto& [a, b] : p.upper_pairs)
      os << "upper " << detail::word_text(a) << " | " << detail::word_text(b) << "\n";
  }
  if (!p.chosen_cycles.empty()) {
    os << "[chosen]\n";
    for (const auto& [h, w] : p.chosen_cycles)
      os << h << " = " << detail::word_text(w) << "\n";
  }
  if (!p.tau.case1.empty() || !p.tau.case2.empty() || !p.tau.case3.empty() ||
      !p.tau.graph_l.edges.empty()) {
    os << "[tau]\n";
    for (const auto& r : p.tau.case1)
      os << "case1 " << r.handle0 << " " << r.handle2 << " alpha=" << r.alpha
         << " beta=" << r.beta << "\n";
    for (const auto& r : p.tau.case2) {
      os << "case2 " << r.handle << " meridian=(" << r.meridian.first << ","
         << r.meridian.second << ")";
      if (r.omega)
        os << " omega=(" << r.omega->first << "," << r.omega->second << ")";
      os << "\n";
    }
    for (const auto& e : p.tau.graph_l.edges) {
      os << "case2L edge " << e.id << " = " << e.tail << " -- " << e.head << " mu=";
      auto it = p.tau.mu.find(e.id);
      if (it == p.tau.mu.end() || it->second.infinite)
        os << "inf";
      else
        os << it->second.value;
      os << "\n";
    }
    for (const auto& r : p.tau.case3)
      os << "case3 " << r.handle << " cycle " << detail::word_text(r.cycle)
         << " alpha=" << r.alpha << "\n";
  }
  return os.str();
}

// The MS-graph / framing files used by the framed-graph checker.
//
//   [msgraph]
//   vertex <id> role=(source|sink|saddle)
//   edge <id> = <tail> -- <head>
//
//   [framing]
//   <edge-id> = <int>|inf
inline MSGraph parse_msgraph(const std::string& text) {
  MSGraph g;
  bool seen = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool inside = false;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto hash = raw.find('#');
    std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::size_t last = body.find_last_not_of(" \t");
    body = last == std::string::npos ? std::string() : body.substr(0, last + 1);
    if (body.empty()) continue;
    detail::LineCursor c{body, lineno};
    if (c.peek() == '[') {
      c.expect('[');
      std::string kind = c.ident("a section name");
      c.expect(']');
      c.end();
      if (kind != "msgraph") throw ParseError(lineno, 2, "expected [msgraph]");
      if (seen) throw ParseError(lineno, 1, "duplicate [msgraph] section");
      seen = true;
      inside = true;
      continue;
    }
    if (!inside) throw ParseError(lineno, c.col(), "content before [msgraph]");
    std::string head = c.ident("vertex or edge");
    if (head == "vertex") {
      MSVertex v;
      v.id = c.ident("a vertex id");
      if (!c.try_consume("role=")) c.fail("expected role=");
      std::string role = c.ident("source, sink or saddle");
      if (role == "source") v.role = VertexRole::Source;
      else if (role == "sink") v.role = VertexRole::Sink;
      else if (role == "saddle") v.role = VertexRole::Saddle;
      else c.fail("role must be source, sink or saddle");
      c.end();
      g.vertices.push_back(std::move(v));
    } else if (head == "edge") {
      MSEdge e;
      e.id = c.ident("an edge id");
      c.expect('=');
      e.tail = c.ident("a vertex id");
      if (!c.try_consume("--")) c.fail("expected --");
      e.head = c.ident("a vertex id");
      c.end();
      g.edges.push_back(std::move(e));
    } else {
      throw ParseError(lineno, 1, "unknown msgraph directive " + head);
    }
  }
  if (!seen) throw ParseError(lineno + 1, 1, "missing [msgraph] section");
  auto issues = msgraph_issues(g);
  if (!issues.empty()) {
    std::string msg = "invalid MS-graph:";
    for (const auto& s : issues) msg += " " + s + ";";
    throw ParseError(lineno, 1, msg);
  }
  return g;
}

inline Framing parse_framing(const std::string& text, const MSGraph& g) {
  Framing f;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool inside = false;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto hash = raw.find('#');
    std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::size_t last = body.find_last_not_of(" \t");
    body = last == std::string::npos ? std::string() : body.substr(0, last + 1);
    if (body.empty()) continue;
    detail::LineCursor c{body, lineno};
    if (c.peek() == '[') {
      c.expect('[');
      std::string kind = c.ident("a section name");
      c.expect(']');
      c.end();
      if (kind != "framing") throw ParseError(lineno, 2, "expected [framing]");
      inside = true;
      continue;
    }
    if (!inside) throw ParseError(lineno, c.col(), "content before [framing]");
    std::string id = c.ident("an edge id");
    c.expect('=');
    FramingValue v;
    if (c.try_consume("inf")) v = FramingValue::inf();
    else v = FramingValue::of(c.integer());
    c.end();
    if (!g.find_edge(id)) throw ParseError(lineno, 1, "unknown edge " + id);
    if (f.count(id)) throw ParseError(lineno, 1, "duplicate framing for " + id);
    f[id] = v;
  }
  for (const auto& e : g.edges)
    if (!f.count(e.id))
      throw ParseError(lineno + 1, 1, "missing framing for edge " + e.id);
  return f;
}

}  // namespace ms3
