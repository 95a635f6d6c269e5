#include "sublap/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace sublap {

namespace {

using Json = nlohmann::ordered_json;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Line of every value in a well-formed JSON text, keyed by JSON pointer.
class LineIndex {
 public:
  explicit LineIndex(std::string_view text) : text_(text) {
    skip_ws();
    value("");
  }

  int line(std::string ptr) const {
    while (true) {
      auto it = lines_.find(ptr);
      if (it != lines_.end()) return it->second;
      const auto cut = ptr.rfind('/');
      if (cut == std::string::npos) return 1;
      ptr.resize(cut);
    }
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') ++line_;
      if (c != ' ' && c != '\n' && c != '\r' && c != '\t') break;
      ++pos_;
    }
  }

  std::string string_token() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      if (pos_ < text_.size()) out += text_[pos_++];
    }
    ++pos_;
    return out;
  }

  void value(const std::string& ptr) {
    lines_.emplace(ptr, line_);
    if (pos_ >= text_.size()) return;
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        const std::string key = string_token();
        skip_ws();
        ++pos_;  // colon
        skip_ws();
        value(ptr + "/" + key);
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      for (int i = 0; pos_ < text_.size() && text_[pos_] != ']'; ++i) {
        value(ptr + "/" + std::to_string(i));
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',') {
          ++pos_;
          skip_ws();
        }
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && std::string_view(",]} \n\r\t").find(text_[pos_]) == std::string_view::npos) ++pos_;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::map<std::string, int> lines_;
};

class Reader {
 public:
  Reader(std::string_view text, const char* what) : text_(text) {
    try {
      doc_ = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
      int line = 1;
      for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) {
        if (text[i] == '\n') ++line;
      }
      throw ValidationError("line " + std::to_string(line) + ": malformed JSON in " + what + ": " +
                            e.what());
    }
    index_.emplace(text);
  }

  const Json& doc() const { return doc_; }

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    throw ValidationError("line " + std::to_string(index_->line(ptr)) + ": " +
                          (ptr.empty() ? std::string("document") : ptr.substr(1)) + ": " + msg);
  }

  const Json& at(const Json& obj, const std::string& ptr, const char* key) const {
    if (!obj.is_object()) fail(ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(ptr, std::string("missing field \"") + key + "\"");
    return *it;
  }

  double real(const Json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(ptr, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ptr, "expected a finite number");
    return v;
  }

  // Finite number, or null with a sibling flag set.
  double real_or_inf(const Json& obj, const std::string& ptr, const char* key) const {
    const Json& j = at(obj, ptr, key);
    if (j.is_null()) {
      const std::string flag = std::string(key) == "value" ? "infinite" : std::string(key) + "_infinite";
      auto it = obj.find(flag);
      if (it == obj.end() || !it->is_boolean() || !it->get<bool>()) {
        fail(ptr + "/" + key, "null without \"" + flag + "\": true");
      }
      return kInf;
    }
    return real(j, ptr + "/" + key);
  }

  long integer(const Json& j, const std::string& ptr) const {
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    return j.get<long>();
  }

  int vertex(const Json& j, const std::string& ptr, int n) const {
    const long v = integer(j, ptr);
    if (v < 0 || v >= n) fail(ptr, "vertex " + std::to_string(v) + " out of range [0, " + std::to_string(n) + ")");
    return static_cast<int>(v);
  }

  Vector reals(const Json& j, const std::string& ptr) const {
    if (!j.is_array()) fail(ptr, "expected an array");
    Vector out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(real(j[i], ptr + "/" + std::to_string(i)));
    return out;
  }

  std::vector<int> ints(const Json& j, const std::string& ptr) const {
    if (!j.is_array()) fail(ptr, "expected an array");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      out.push_back(static_cast<int>(integer(j[i], ptr + "/" + std::to_string(i))));
    }
    return out;
  }

  void only_keys(const Json& obj, const std::string& ptr, std::initializer_list<const char*> keys) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* k : keys) ok = ok || it.key() == k;
      if (!ok) fail(ptr + "/" + it.key(), "unknown field \"" + it.key() + "\"");
    }
  }

 private:
  std::string_view text_;
  Json doc_;
  std::optional<LineIndex> index_;
};

void put_real(Json& obj, const std::string& key, double v) {
  if (std::isfinite(v)) {
    obj[key] = v;
    return;
  }
  if (!(v > 0)) throw ValidationError("cannot serialize " + key + ": not a finite number or +inf");
  obj[key] = nullptr;
  obj[key == "value" ? std::string("infinite") : key + "_infinite"] = true;
}

Json set_json(const VertexSet& s) { return Json(s.members()); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string vertex_name(const SubmodularTransformation& f, int v) {
  const auto& labels = f.ground().labels;
  return labels.empty() ? std::to_string(v) : labels[static_cast<std::size_t>(v)];
}

EdgeFunction parse_edge(const Reader& r, const Json& e, const std::string& ptr, int n) {
  const std::string type = [&] {
    const Json& t = r.at(e, ptr, "type");
    if (!t.is_string()) r.fail(ptr + "/type", "expected a string");
    return t.get<std::string>();
  }();
  double weight = 1.0;
  if (auto it = e.find("weight"); it != e.end()) weight = r.real(*it, ptr + "/weight");
  try {
    if (type == "undirected") {
      r.only_keys(e, ptr, {"type", "u", "v", "weight"});
      return EdgeFunction::undirected(r.vertex(r.at(e, ptr, "u"), ptr + "/u", n),
                                      r.vertex(r.at(e, ptr, "v"), ptr + "/v", n), weight);
    }
    if (type == "directed") {
      r.only_keys(e, ptr, {"type", "tail", "head", "weight"});
      return EdgeFunction::directed(r.vertex(r.at(e, ptr, "tail"), ptr + "/tail", n),
                                    r.vertex(r.at(e, ptr, "head"), ptr + "/head", n), weight);
    }
    if (type == "hyper") {
      r.only_keys(e, ptr, {"type", "vertices", "weight"});
      const Json& vs = r.at(e, ptr, "vertices");
      if (!vs.is_array()) r.fail(ptr + "/vertices", "expected an array");
      std::vector<int> vertices;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        vertices.push_back(r.vertex(vs[i], ptr + "/vertices/" + std::to_string(i), n));
      }
      return EdgeFunction::hyper(std::move(vertices), weight);
    }
    if (type == "table") {
      r.only_keys(e, ptr, {"type", "support", "values", "weight"});
      const Json& vs = r.at(e, ptr, "support");
      if (!vs.is_array()) r.fail(ptr + "/support", "expected an array");
      std::vector<int> support;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        support.push_back(r.vertex(vs[i], ptr + "/support/" + std::to_string(i), n));
      }
      return EdgeFunction::table(std::move(support), r.reals(r.at(e, ptr, "values"), ptr + "/values"),
                                 weight);
    }
  } catch (const ValidationError& err) {
    if (std::string_view(err.what()).starts_with("line ")) throw;
    r.fail(ptr, err.what());
  }
  r.fail(ptr + "/type", "unknown edge type \"" + type + "\"");
}

Json edge_json(const EdgeFunction& e) {
  Json j;
  j["type"] = to_string(e.kind());
  switch (e.kind()) {
    case EdgeKind::kUndirected:
      j["u"] = e.support()[0];
      j["v"] = e.support()[1];
      break;
    case EdgeKind::kDirected:
      j["tail"] = e.support()[0];
      j["head"] = e.support()[1];
      break;
    case EdgeKind::kHyper:
      j["vertices"] = e.support();
      break;
    case EdgeKind::kTable:
      j["support"] = e.support();
      j["values"] = e.values();
      break;
  }
  j["weight"] = e.weight();
  return j;
}

SolveStatus status_from(const Reader& r, const std::string& s) {
  for (SolveStatus st : {SolveStatus::kOptimal, SolveStatus::kInfeasible, SolveStatus::kIterationLimit}) {
    if (to_string(st) == s) return st;
  }
  r.fail("/status", "unknown status \"" + s + "\"");
}

std::string string_field(const Reader& r, const Json& obj, const std::string& ptr, const char* key) {
  const Json& j = r.at(obj, ptr, key);
  if (!j.is_string()) r.fail(ptr + "/" + key, "expected a string");
  return j.get<std::string>();
}

bool bool_field(const Reader& r, const Json& obj, const std::string& ptr, const char* key) {
  const Json& j = r.at(obj, ptr, key);
  if (!j.is_boolean()) r.fail(ptr + "/" + key, "expected a boolean");
  return j.get<bool>();
}

VertexSet set_from(const Reader& r, const Json& j, const std::string& ptr, int n) {
  VertexSet s(n);
  if (!j.is_array()) r.fail(ptr, "expected an array");
  for (std::size_t i = 0; i < j.size(); ++i) s.insert(r.vertex(j[i], ptr + "/" + std::to_string(i), n));
  return s;
}

}  // namespace

ProblemDocument parse_problem(std::string_view text) {
  const Reader r(text, "problem");
  const Json& d = r.doc();
  if (!d.is_object()) r.fail("", "expected an object");
  r.only_keys(d, "", {"n", "edges", "b", "labels", "labels_names"});
  const long n = r.integer(r.at(d, "", "n"), "/n");
  if (n < 1) r.fail("/n", "n must be >= 1");
  const int ni = static_cast<int>(n);

  GroundSet ground{ni, {}};
  if (auto it = d.find("labels_names"); it != d.end()) {
    if (!it->is_array()) r.fail("/labels_names", "expected an array");
    if (static_cast<long>(it->size()) != n) r.fail("/labels_names", "must have exactly n entries");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_string()) r.fail("/labels_names/" + std::to_string(i), "expected a string");
      ground.labels.push_back((*it)[i].get<std::string>());
    }
  }

  std::vector<EdgeFunction> edges;
  const Json& es = r.at(d, "", "edges");
  if (!es.is_array()) r.fail("/edges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    edges.push_back(parse_edge(r, es[i], "/edges/" + std::to_string(i), ni));
  }

  ProblemDocument doc;
  try {
    doc.f = SubmodularTransformation(std::move(ground), std::move(edges));
  } catch (const ValidationError& e) {
    r.fail(d.contains("labels_names") ? "/labels_names" : "", e.what());
  }

  if (auto it = d.find("b"); it != d.end()) {
    Vector b = r.reals(*it, "/b");
    if (static_cast<long>(b.size()) != n) r.fail("/b", "b must have n = " + std::to_string(n) + " entries");
    doc.b = std::move(b);
  }

  if (auto it = d.find("labels"); it != d.end()) {
    if (!it->is_object()) r.fail("/labels", "expected an object");
    r.only_keys(*it, "/labels", {"fixed", "boundary"});
    const auto& names = doc.f.ground().labels;
    auto resolve = [&](const std::string& key, const std::string& ptr) {
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == key) return static_cast<int>(i);
      }
      int v = -1;
      const auto res = std::from_chars(key.data(), key.data() + key.size(), v);
      if (res.ec != std::errc() || res.ptr != key.data() + key.size() || v < 0 || v >= ni) {
        r.fail(ptr, "unknown vertex \"" + key + "\"");
      }
      return v;
    };
    LabelsBlock block;
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (const char* part : {"fixed", "boundary"}) {
      const std::string ptr = std::string("/labels/") + part;
      const Json& obj = r.at(*it, "/labels", part);
      if (!obj.is_object()) r.fail(ptr, "expected an object");
      auto& dest = std::string(part) == "fixed" ? block.fixed : block.boundary;
      for (auto kv = obj.begin(); kv != obj.end(); ++kv) {
        const std::string p = ptr + "/" + kv.key();
        const int v = resolve(kv.key(), p);
        if (seen[static_cast<std::size_t>(v)]++) r.fail(p, "vertex " + std::to_string(v) + " listed twice");
        dest.emplace_back(v, r.real(kv.value(), p));
      }
    }
    for (int v = 0; v < ni; ++v) {
      if (!seen[static_cast<std::size_t>(v)]) {
        r.fail("/labels", "vertex " + std::to_string(v) + " is neither fixed nor boundary");
      }
    }
    std::sort(block.fixed.begin(), block.fixed.end());
    std::sort(block.boundary.begin(), block.boundary.end());
    doc.labels = std::move(block);
  }
  return doc;
}

ProblemDocument read_problem(const std::string& path) { return parse_problem(read_file(path)); }

std::string serialize(const ProblemDocument& doc) {
  Json j;
  j["n"] = doc.f.n();
  Json edges = Json::array();
  for (const EdgeFunction& e : doc.f.edges()) edges.push_back(edge_json(e));
  j["edges"] = std::move(edges);
  if (doc.b) j["b"] = *doc.b;
  if (doc.labels) {
    auto block = [&](const std::vector<std::pair<int, double>>& entries) {
      Json o = Json::object();
      for (const auto& [v, x] : entries) o[std::to_string(v)] = x;
      return o;
    };
    j["labels"]["fixed"] = block(doc.labels->fixed);
    j["labels"]["boundary"] = block(doc.labels->boundary);
  }
  if (!doc.f.ground().labels.empty()) j["labels_names"] = doc.f.ground().labels;
  return dump(j);
}

LabeledProblem labeled_problem(const ProblemDocument& doc) {
  if (!doc.labels) throw ValidationError("problem has no labels block");
  const int n = doc.f.n();
  LabeledProblem lp{VertexSet(n), Vector(static_cast<std::size_t>(n), 0.0),
                    Vector(static_cast<std::size_t>(n), 0.0)};
  for (const auto& [v, x] : doc.labels->fixed) {
    lp.fixed.insert(v);
    lp.x_tilde[static_cast<std::size_t>(v)] = x;
  }
  for (const auto& [v, b] : doc.labels->boundary) lp.b_tilde[static_cast<std::size_t>(v)] = b;
  return lp;
}

std::string serialize(const SolutionDocument& doc) {
  const Solution& s = doc.solution;
  Json j;
  j["status"] = to_string(s.status);
  j["x"] = s.x;
  j["phi"] = s.phi;
  put_real(j, "objective", s.objective);
  put_real(j, "gap", s.gap);
  j["iterations"] = s.iterations;
  j["dual_feasible"] = s.dual_feasible;
  put_real(j, "separation", s.separation);
  j["solver"]["tolerance"] = doc.solver.tolerance;
  j["solver"]["method"] = doc.solver.method;
  j["certificate"] = s.certificate ? set_json(*s.certificate) : Json(nullptr);
  return dump(j);
}

SolutionDocument parse_solution(std::string_view text) {
  const Reader r(text, "solution");
  const Json& d = r.doc();
  SolutionDocument doc;
  Solution& s = doc.solution;
  s.status = status_from(r, string_field(r, d, "", "status"));
  s.x = r.reals(r.at(d, "", "x"), "/x");
  s.phi = r.reals(r.at(d, "", "phi"), "/phi");
  s.objective = r.real_or_inf(d, "", "objective");
  s.gap = r.real_or_inf(d, "", "gap");
  s.iterations = r.integer(r.at(d, "", "iterations"), "/iterations");
  s.dual_feasible = bool_field(r, d, "", "dual_feasible");
  s.separation = r.real_or_inf(d, "", "separation");
  const Json& solver = r.at(d, "", "solver");
  doc.solver.tolerance = r.real(r.at(solver, "/solver", "tolerance"), "/solver/tolerance");
  doc.solver.method = string_field(r, solver, "/solver", "method");
  const Json& cert = r.at(d, "", "certificate");
  if (!cert.is_null()) s.certificate = set_from(r, cert, "/certificate", static_cast<int>(s.x.size()));
  return doc;
}

std::string serialize(const RegressionResult& res) {
  Json j;
  j["method"] = to_string(res.method);
  j["mode"] = to_string(res.mode);
  j["p"] = res.p;
  j["z"] = res.z;
  j["b_prime"] = res.b_prime;
  j["breakpoints"] = res.breakpoints;
  Json chain = Json::array();
  for (const VertexSet& s : res.chain) chain.push_back(set_json(s));
  j["chain"] = std::move(chain);
  j["iterations"] = res.iterations;
  j["gap_bound"] = res.gap_bound;
  Json trace = Json::array();
  for (const FrankWolfeStep& st : res.trace) {
    trace.push_back(Json{{"objective", st.objective}, {"gap", st.gap}, {"step", st.step},
                         {"sq_dist", st.sq_dist}});
  }
  j["trace"] = std::move(trace);
  return dump(j);
}

RegressionResult parse_regression(std::string_view text) {
  const Reader r(text, "regression");
  const Json& d = r.doc();
  RegressionResult res;
  const std::string method = string_field(r, d, "", "method");
  bool known = false;
  for (RegressionMethod m : {RegressionMethod::kFrankWolfe, RegressionMethod::kCombinatorial,
                             RegressionMethod::kBruteForce}) {
    if (to_string(m) == method) {
      res.method = m;
      known = true;
    }
  }
  if (!known) r.fail("/method", "unknown method \"" + method + "\"");
  const std::string mode = string_field(r, d, "", "mode");
  if (mode == "polyhedron") res.mode = RegressionMode::kPolyhedron;
  else if (mode == "base") res.mode = RegressionMode::kBase;
  else r.fail("/mode", "unknown mode \"" + mode + "\"");
  res.p = r.reals(r.at(d, "", "p"), "/p");
  res.z = r.reals(r.at(d, "", "z"), "/z");
  res.b_prime = r.reals(r.at(d, "", "b_prime"), "/b_prime");
  res.breakpoints = r.reals(r.at(d, "", "breakpoints"), "/breakpoints");
  const Json& chain = r.at(d, "", "chain");
  if (!chain.is_array()) r.fail("/chain", "expected an array");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    res.chain.push_back(set_from(r, chain[i], "/chain/" + std::to_string(i), static_cast<int>(res.p.size())));
  }
  res.iterations = static_cast<int>(r.integer(r.at(d, "", "iterations"), "/iterations"));
  res.gap_bound = r.real(r.at(d, "", "gap_bound"), "/gap_bound");
  const Json& trace = r.at(d, "", "trace");
  if (!trace.is_array()) r.fail("/trace", "expected an array");
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const std::string p = "/trace/" + std::to_string(i);
    FrankWolfeStep st;
    st.objective = r.real(r.at(trace[i], p, "objective"), p + "/objective");
    st.gap = r.real(r.at(trace[i], p, "gap"), p + "/gap");
    st.step = r.real(r.at(trace[i], p, "step"), p + "/step");
    st.sq_dist = r.real(r.at(trace[i], p, "sq_dist"), p + "/sq_dist");
    res.trace.push_back(st);
  }
  return res;
}

std::string serialize(const ResistanceDocument& doc) {
  const ResistanceValue& v = doc.resistance;
  Json j;
  j["source"] = doc.source;
  j["target"] = doc.target;
  put_real(j, "value", v.value);
  if (!j.contains("infinite")) j["infinite"] = false;
  j["degraded"] = v.degraded;
  put_real(j, "energy", v.energy);
  j["witness_x"] = v.witness_x;
  j["witness_phi"] = v.witness_phi;
  return dump(j);
}

ResistanceDocument parse_resistance(std::string_view text) {
  const Reader r(text, "resistance");
  const Json& d = r.doc();
  ResistanceDocument doc;
  doc.source = static_cast<int>(r.integer(r.at(d, "", "source"), "/source"));
  doc.target = static_cast<int>(r.integer(r.at(d, "", "target"), "/target"));
  ResistanceValue& v = doc.resistance;
  v.value = r.real_or_inf(d, "", "value");
  v.infinite = bool_field(r, d, "", "infinite");
  v.degraded = bool_field(r, d, "", "degraded");
  v.energy = r.real_or_inf(d, "", "energy");
  v.witness_x = r.reals(r.at(d, "", "witness_x"), "/witness_x");
  v.witness_phi = r.reals(r.at(d, "", "witness_phi"), "/witness_phi");
  return doc;
}

std::string serialize(const CentralityReport& rep) {
  Json j;
  j["measure"] = to_string(rep.measure);
  Json scores = Json::array();
  for (int v : rep.ranking) {
    scores.push_back(Json{{"vertex", v}, {"score", rep.scores[static_cast<std::size_t>(v)]}});
  }
  j["scores"] = std::move(scores);
  if (rep.measure == CentralityMeasure::kBetweenness) {
    Json pairs = Json::array();
    for (const PairCurrent& pc : rep.pairs) {
      pairs.push_back(Json{{"s", pc.s}, {"t", pc.t}, {"feasible", pc.feasible}, {"tau", pc.tau}});
    }
    j["pairs"] = std::move(pairs);
  }
  return dump(j);
}

CentralityReport parse_centrality(std::string_view text) {
  const Reader r(text, "centrality");
  const Json& d = r.doc();
  CentralityReport rep;
  const std::string m = string_field(r, d, "", "measure");
  if (m == "closeness") rep.measure = CentralityMeasure::kCloseness;
  else if (m == "betweenness") rep.measure = CentralityMeasure::kBetweenness;
  else r.fail("/measure", "unknown measure \"" + m + "\"");
  const Json& scores = r.at(d, "", "scores");
  if (!scores.is_array()) r.fail("/scores", "expected an array");
  const int n = static_cast<int>(scores.size());
  rep.scores.assign(static_cast<std::size_t>(n), 0.0);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const std::string p = "/scores/" + std::to_string(i);
    const int v = r.vertex(r.at(scores[i], p, "vertex"), p + "/vertex", n);
    rep.scores[static_cast<std::size_t>(v)] = r.real(r.at(scores[i], p, "score"), p + "/score");
    rep.ranking.push_back(v);
  }
  if (rep.measure == CentralityMeasure::kBetweenness) {
    const Json& pairs = r.at(d, "", "pairs");
    if (!pairs.is_array()) r.fail("/pairs", "expected an array");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string p = "/pairs/" + std::to_string(i);
      PairCurrent pc;
      pc.s = r.vertex(r.at(pairs[i], p, "s"), p + "/s", n);
      pc.t = r.vertex(r.at(pairs[i], p, "t"), p + "/t", n);
      pc.feasible = bool_field(r, pairs[i], p, "feasible");
      pc.tau = r.reals(r.at(pairs[i], p, "tau"), p + "/tau");
      rep.pairs.push_back(std::move(pc));
    }
  }
  return rep;
}

std::string serialize(const DistributiveLattice& l) {
  Json j;
  j["n"] = l.n();
  j["classes"] = l.classes();
  Json arcs = Json::array();
  for (const auto& [a, b] : l.hasse_arcs()) arcs.push_back(Json::array({a, b}));
  j["hasse"] = std::move(arcs);
  j["forced_in"] = l.forced_in();
  j["forced_out"] = l.forced_out();
  j["topological_order"] = l.topological_order();
  return dump(j);
}

DistributiveLattice parse_lattice(std::string_view text) {
  const Reader r(text, "lattice");
  const Json& d = r.doc();
  const long n = r.integer(r.at(d, "", "n"), "/n");
  const Json& cs = r.at(d, "", "classes");
  if (!cs.is_array()) r.fail("/classes", "expected an array");
  std::vector<std::vector<int>> classes;
  for (std::size_t i = 0; i < cs.size(); ++i) classes.push_back(r.ints(cs[i], "/classes/" + std::to_string(i)));
  std::vector<std::pair<int, int>> rel;
  const Json& hs = r.at(d, "", "hasse");
  if (!hs.is_array()) r.fail("/hasse", "expected an array");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const std::vector<int> a = r.ints(hs[i], "/hasse/" + std::to_string(i));
    if (a.size() != 2) r.fail("/hasse/" + std::to_string(i), "expected a pair");
    rel.emplace_back(a[0], a[1]);
  }
  try {
    return DistributiveLattice(static_cast<int>(n), std::move(classes), rel,
                               r.ints(r.at(d, "", "forced_in"), "/forced_in"),
                               r.ints(r.at(d, "", "forced_out"), "/forced_out"));
  } catch (const ValidationError& e) {
    r.fail("", e.what());
  }
}

std::string resistance_csv(const SubmodularTransformation& f, const std::vector<double>& matrix) {
  const int n = f.n();
  std::ostringstream out;
  out << "vertex";
  for (int v = 0; v < n; ++v) out << ',' << csv_field(vertex_name(f, v));
  out << '\n';
  for (int u = 0; u < n; ++u) {
    out << csv_field(vertex_name(f, u));
    for (int v = 0; v < n; ++v) {
      out << ',' << format_real(matrix[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)]);
    }
    out << '\n';
  }
  return out.str();
}

std::string centrality_csv(const SubmodularTransformation& f, const CentralityReport& rep) {
  std::ostringstream out;
  out << "vertex,score\n";
  for (int v : rep.ranking) {
    out << csv_field(vertex_name(f, v)) << ',' << format_real(rep.scores[static_cast<std::size_t>(v)]) << '\n';
  }
  return out.str();
}

std::string labels_csv(const SubmodularTransformation& f, std::span<const double> x,
                       const VertexSet& unlabeled, const std::vector<int>& labels) {
  std::ostringstream out;
  out << "vertex,x,label\n";
  for (int v : unlabeled.members()) {
    out << csv_field(vertex_name(f, v)) << ',' << format_real(x[static_cast<std::size_t>(v)]) << ','
        << (labels[static_cast<std::size_t>(v)] > 0 ? "+1" : "-1") << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("error writing " + path);
}

}  // namespace sublap
