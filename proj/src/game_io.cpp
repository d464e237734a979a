#include "mogs/game_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mogs/catalog.hpp"

namespace mogs {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& message) { throw std::runtime_error(message); }

void reject_unknown_fields(const json& object, std::initializer_list<const char*> allowed,
                           const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known |= it.key() == key;
    if (!known) fail(where + ": unknown field '" + it.key() + "'");
  }
}

Vec to_vec(const json& array, const std::string& where) {
  if (!array.is_array()) fail(where + ": expected an array of numbers");
  Vec out;
  for (const auto& v : array) {
    if (!v.is_number()) fail(where + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<int> to_int_vec(const json& array, const std::string& where) {
  Vec raw = to_vec(array, where);
  std::vector<int> out;
  for (double v : raw) {
    if (v < 0 || v != std::floor(v)) fail(where + ": exponents must be nonnegative integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

StrategySpace parse_space_json(const json& j, int player) {
  const std::string where = "space of player " + std::to_string(player);
  if (!j.is_object()) fail(where + ": expected an object");
  std::string type = j.value("type", "");
  if (type == "box") {
    reject_unknown_fields(j, {"type", "lower", "upper"}, where);
    if (!j.contains("lower") || !j.contains("upper")) fail(where + ": box needs lower and upper");
    return StrategySpace::box(to_vec(j["lower"], where), to_vec(j["upper"], where));
  }
  if (type == "simplex") {
    reject_unknown_fields(j, {"type", "dimension"}, where);
    if (!j.contains("dimension")) fail(where + ": simplex needs a dimension");
    return StrategySpace::simplex(j["dimension"].get<int>());
  }
  if (type == "circle") {
    reject_unknown_fields(j, {"type", "metric"}, where);
    std::string metric = j.value("metric", "arc");
    if (metric != "arc" && metric != "chord") fail(where + ": metric must be arc or chord");
    return StrategySpace::circle(metric == "arc" ? MetricKind::Arc : MetricKind::Euclidean);
  }
  fail(where + ": type must be box, simplex or circle");
}

json space_to_json(const StrategySpace& space) {
  json j;
  switch (space.kind) {
    case SpaceKind::Box:
      j["type"] = "box";
      j["lower"] = space.lower;
      j["upper"] = space.upper;
      break;
    case SpaceKind::Simplex:
      j["type"] = "simplex";
      j["dimension"] = space.dim;
      break;
    case SpaceKind::Circle:
      j["type"] = "circle";
      j["metric"] = space.metric == MetricKind::Arc ? "arc" : "chord";
      break;
  }
  return j;
}

std::vector<MonomialTerm> parse_terms(const json& array, int players,
                                      const std::string& where) {
  if (!array.is_array() || array.empty()) fail(where + ": terms must be a nonempty array");
  std::vector<MonomialTerm> terms;
  int index = 0;
  for (const auto& t : array) {
    const std::string term_where = where + " term " + std::to_string(index);
    reject_unknown_fields(t, {"coef", "powers"}, term_where);
    if (!t.contains("coef") || !t.contains("powers")) {
      fail(term_where + ": needs coef and powers");
    }
    MonomialTerm term;
    term.coef = t["coef"].get<double>();
    if (!t["powers"].is_array() || static_cast<int>(t["powers"].size()) != players) {
      fail(term_where + ": powers must list one exponent vector per player");
    }
    for (const auto& block : t["powers"]) {
      term.powers.push_back(to_int_vec(block, term_where));
    }
    terms.push_back(std::move(term));
    ++index;
  }
  return terms;
}

UtilityFunction parse_builtin(const json& j, int player) {
  const std::string where = "utility of player " + std::to_string(player);
  reject_unknown_fields(j, {"type", "name", "params"}, where);
  std::string name = j.value("name", "");
  const json params = j.value("params", json::object());
  if (name == "torus") {
    reject_unknown_fields(params, {"self", "other", "alpha", "phi"}, where + " params");
    return make_torus_utility(params.value("self", player), params.value("other", 1 - player),
                              params.value("alpha", 1.0), params.value("phi", 0.0));
  }
  if (name == "blotto") {
    reject_unknown_fields(params, {"sign"}, where + " params");
    return make_blotto_utility(params.value("sign", 1.0));
  }
  fail(where + ": unknown builtin '" + name + "'");
}

UtilityFunction parse_utility(const json& j, int player, int players) {
  const std::string where = "utility of player " + std::to_string(player);
  if (!j.is_object()) fail(where + ": expected an object");
  std::string type = j.value("type", "");
  if (type == "polynomial") {
    reject_unknown_fields(j, {"type", "terms"}, where);
    return PolynomialUtility{SparsePolynomial::make(parse_terms(j["terms"], players, where))};
  }
  if (type == "polymatrix") {
    reject_unknown_fields(j, {"type", "edges"}, where);
    if (!j.contains("edges") || !j["edges"].is_array()) fail(where + ": polymatrix needs edges");
    PolymatrixUtility pm;
    int index = 0;
    for (const auto& e : j["edges"]) {
      const std::string edge_where = where + " edge " + std::to_string(index);
      if (!e.contains("other")) fail(edge_where + ": needs other");
      PolymatrixEdge edge;
      edge.other = e["other"].get<int>();
      if (e.contains("matrix")) {
        reject_unknown_fields(e, {"other", "matrix"}, edge_where);
        const json& m = e["matrix"];
        reject_unknown_fields(m, {"rows", "cols", "data"}, edge_where + " matrix");
        MatrixTerm mat;
        mat.rows = m.value("rows", 0);
        mat.cols = m.value("cols", 0);
        mat.data = to_vec(m["data"], edge_where + " matrix data");
        if (static_cast<int>(mat.data.size()) != mat.rows * mat.cols) {
          fail(edge_where + ": matrix data length does not match rows*cols");
        }
        edge.term = std::move(mat);
      } else {
        reject_unknown_fields(e, {"other", "terms"}, edge_where);
        if (!e.contains("terms")) fail(edge_where + ": needs terms or matrix");
        // Bivariate blocks: owner's variables first, then the neighbor's.
        edge.term = BivariatePoly{SparsePolynomial::make(parse_terms(e["terms"], 2, edge_where))};
      }
      pm.edges.push_back(std::move(edge));
      ++index;
    }
    return pm;
  }
  if (type == "builtin") return parse_builtin(j, player);
  fail(where + ": type must be polynomial, polymatrix or builtin");
}

json utility_to_json(const UtilityFunction& u, const std::string& where) {
  json j;
  if (const auto* poly = std::get_if<PolynomialUtility>(&u)) {
    j["type"] = "polynomial";
    j["terms"] = json::array();
    for (const MonomialTerm& t : poly->poly.terms) {
      j["terms"].push_back({{"coef", t.coef}, {"powers", t.powers}});
    }
    return j;
  }
  if (const auto* pm = std::get_if<PolymatrixUtility>(&u)) {
    j["type"] = "polymatrix";
    j["edges"] = json::array();
    for (const PolymatrixEdge& e : pm->edges) {
      json edge{{"other", e.other}};
      if (const auto* bp = std::get_if<BivariatePoly>(&e.term)) {
        edge["terms"] = json::array();
        for (const MonomialTerm& t : bp->poly.terms) {
          edge["terms"].push_back({{"coef", t.coef}, {"powers", t.powers}});
        }
      } else {
        const auto& mat = std::get<MatrixTerm>(e.term);
        edge["matrix"] = {{"rows", mat.rows}, {"cols", mat.cols}, {"data", mat.data}};
      }
      j["edges"].push_back(std::move(edge));
    }
    return j;
  }
  const auto& bb = std::get<BlackBoxUtility>(u);
  if (bb.builtin.empty()) {
    fail(where + ": black-box utility without a builtin name cannot be serialized");
  }
  j["type"] = "builtin";
  j["name"] = bb.builtin;
  if (bb.builtin == "torus") {
    j["params"] = {{"self", static_cast<int>(bb.params[0])},
                   {"other", static_cast<int>(bb.params[1])},
                   {"alpha", bb.params[2]},
                   {"phi", bb.params[3]}};
  } else if (bb.builtin == "blotto") {
    j["params"] = {{"sign", bb.params[0]}};
  }
  return j;
}

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

}  // namespace

ContinuousGame parse_game(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("line " + std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) fail("game file must be a JSON object");
  reject_unknown_fields(doc, {"players", "zero_sum", "spaces", "utilities", "atoms", "name"},
                        "game");

  if (!doc.contains("players")) fail("game: missing players");
  const int players = doc["players"].get<int>();
  if (players < 1) fail("game: players must be >= 1");

  if (!doc.contains("spaces") || static_cast<int>(doc["spaces"].size()) != players) {
    fail("game: spaces must list one entry per player");
  }
  if (!doc.contains("utilities") || static_cast<int>(doc["utilities"].size()) != players) {
    fail("game: utilities must list one entry per player");
  }

  std::vector<StrategySpace> spaces;
  for (int i = 0; i < players; ++i) spaces.push_back(parse_space_json(doc["spaces"][i], i));

  std::vector<UtilityFunction> utilities;
  for (int i = 0; i < players; ++i) {
    utilities.push_back(parse_utility(doc["utilities"][i], i, players));
  }

  std::vector<std::vector<Vec>> atoms;
  if (doc.contains("atoms")) {
    if (static_cast<int>(doc["atoms"].size()) != players) {
      fail("game: atoms must list one array per player");
    }
    for (int i = 0; i < players; ++i) {
      std::vector<Vec> list;
      for (const auto& a : doc["atoms"][i]) {
        list.push_back(to_vec(a, "atom of player " + std::to_string(i)));
      }
      atoms.push_back(std::move(list));
    }
  }

  try {
    return make_game(std::move(spaces), std::move(utilities), doc.value("zero_sum", false),
                     std::move(atoms), doc.value("name", std::string{}));
  } catch (const std::invalid_argument& e) {
    fail(std::string("game validation: ") + e.what());
  }
}

ContinuousGame load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open game file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_game(buffer.str());
}

std::string serialize_game(const ContinuousGame& game) {
  json doc;
  doc["players"] = game.players;
  doc["zero_sum"] = game.zero_sum_declared;
  doc["spaces"] = json::array();
  for (const StrategySpace& s : game.spaces) doc["spaces"].push_back(space_to_json(s));
  doc["utilities"] = json::array();
  for (int i = 0; i < game.players; ++i) {
    doc["utilities"].push_back(
        utility_to_json(game.utilities[i], "utility of player " + std::to_string(i)));
  }
  if (game.is_finite()) doc["atoms"] = game.finite_atoms;
  if (!game.name.empty()) doc["name"] = game.name;
  return doc.dump(2);
}

StrategySpace parse_space(const std::string& text) {
  std::vector<std::string> parts;
  std::string chunk;
  std::stringstream stream(text);
  while (std::getline(stream, chunk, ':')) parts.push_back(chunk);
  if (parts.empty()) fail("empty space description");

  if (parts[0] == "box") {
    if (parts.size() != 3) fail("box space needs box:<lower>:<upper>");
    Vec lo, hi;
    std::stringstream ls(parts[1]), hs(parts[2]);
    while (std::getline(ls, chunk, ',')) lo.push_back(std::stod(chunk));
    while (std::getline(hs, chunk, ',')) hi.push_back(std::stod(chunk));
    return StrategySpace::box(std::move(lo), std::move(hi));
  }
  if (parts[0] == "simplex") {
    if (parts.size() != 2) fail("simplex space needs simplex:<dimension>");
    return StrategySpace::simplex(std::stoi(parts[1]));
  }
  if (parts[0] == "circle") {
    if (parts.size() == 1) return StrategySpace::circle();
    if (parts.size() == 2 && parts[1] == "chord") return StrategySpace::circle(MetricKind::Euclidean);
    if (parts.size() == 2 && parts[1] == "arc") return StrategySpace::circle(MetricKind::Arc);
    fail("circle space is circle or circle:chord");
  }
  fail("space must start with box, simplex or circle");
}

MixedStrategy parse_measure(const std::string& text, const StrategySpace& space) {
  std::vector<Vec> atoms;
  Vec weights;
  std::stringstream stream(text);
  std::string entry;
  while (std::getline(stream, entry, ';')) {
    if (entry.empty()) continue;
    auto colon = entry.rfind(':');
    if (colon == std::string::npos) fail("measure entry '" + entry + "' needs atom:weight");
    Vec atom;
    std::stringstream coords(entry.substr(0, colon));
    std::string c;
    while (std::getline(coords, c, ',')) atom.push_back(std::stod(c));
    if (static_cast<int>(atom.size()) != space.dim) {
      fail("measure atom '" + entry + "' has wrong dimension");
    }
    atoms.push_back(std::move(atom));
    weights.push_back(std::stod(entry.substr(colon + 1)));
  }
  if (atoms.empty()) fail("measure has no atoms");
  try {
    return canonicalize(std::move(atoms), std::move(weights), space);
  } catch (const std::invalid_argument& e) {
    fail(std::string("invalid measure: ") + e.what());
  }
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

}  // namespace

void write_trace_csv(std::ostream& out, const SolveResult& result, int players) {
  out << "iter";
  for (int i = 0; i < players; ++i) out << ",instability_" << i;
  out << ",wasserstein_step";
  for (int i = 0; i < players; ++i) out << ",subgame_size_" << i;
  out << ",master_gap,master_certified,ms_restrict,ms_master,ms_best_response,ms_wasserstein\n";
  for (const IterationTrace& row : result.trace) {
    out << row.iteration;
    for (double v : row.instability) out << ',' << fmt(v);
    out << ',' << (std::isnan(row.wasserstein_step) ? "" : fmt(row.wasserstein_step));
    for (int s : row.subgame_sizes) out << ',' << s;
    out << ',' << fmt(row.master_gap) << ',' << (row.master_certified ? 1 : 0) << ','
        << fmt(row.ms_restrict) << ',' << fmt(row.ms_master) << ',' << fmt(row.ms_best_response)
        << ',' << fmt(row.ms_wasserstein) << '\n';
  }
  out << "# epsilon_certified," << fmt(result.epsilon_certified) << '\n';
  out << "# payoffs";
  for (double v : result.payoffs) out << ',' << fmt(v);
  out << '\n';
  for (int i = 0; i < players; ++i) {
    const MixedStrategy& s = result.profile.strategies[i];
    out << "# support_" << i;
    for (int a = 0; a < s.support_size(); ++a) {
      out << ",(";
      for (std::size_t d = 0; d < s.atoms[a].size(); ++d) {
        if (d) out << ' ';
        out << fmt(s.atoms[a][d]);
      }
      out << "):" << fmt(s.weights[a]);
    }
    out << '\n';
  }
}

nlohmann::json solve_summary_json(const ContinuousGame& game, const SolveConfig& config,
                                  const SolveResult& result) {
  json strategies = json::array();
  for (const MixedStrategy& s : result.profile.strategies) {
    strategies.push_back({{"atoms", s.atoms}, {"weights", s.weights}});
  }
  json sizes = json::array();
  if (!result.trace.empty()) sizes = result.trace.back().subgame_sizes;
  return json{
      {"game", game.name.empty() ? "custom" : game.name},
      {"status", result.terminated == Termination::Converged ? "converged" : "max_iterations"},
      {"iterations", result.iterations},
      {"epsilon", config.epsilon},
      {"epsilon_certified", result.epsilon_certified},
      {"seed", config.seed},
      {"payoffs", result.payoffs},
      {"strategies", strategies},
      {"final_subgame_sizes", sizes},
  };
}

}  // namespace mogs
