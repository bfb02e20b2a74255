#include "epc/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace epc {

std::string fmt9(double v) {
  if (v == kInf) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

double round9(double v) {
  if (v == kInf) return v;
  return std::strtod(fmt9(v).c_str(), nullptr);
}

Json json_num(double v) { return Json(round9(v)); }

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

bool is_inf_token(std::string t) {
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  return t == "inf" || t == "+inf" || t == "infinity";
}

double parse_dist(const std::string& t) {
  if (is_inf_token(t)) return kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw ParseError("trailing characters in number: '" + t + "'");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + t + "'");
  }
}

bool parses_as_number(const std::string& t) {
  if (is_inf_token(t)) return true;
  try {
    std::size_t used = 0;
    std::stod(t, &used);
    return used == t.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

}  // namespace

EpSpace load_distance_csv(std::istream& in) {
  const auto rows = read_csv(in);
  if (rows.empty()) throw ParseError("empty distance matrix");
  std::vector<std::vector<double>> m;
  for (const auto& row : rows) {
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& cell : row) r.push_back(parse_dist(cell));
    m.push_back(std::move(r));
  }
  EpSpace space = EpSpace::from_rows(m);
  if (auto v = find_violation(space)) {
    throw ParseError("not an ep-metric space: " + v->to_string());
  }
  return space;
}

void save_distance_csv(std::ostream& out, const EpSpace& space) {
  for (index_t i = 0; i < space.size(); ++i) {
    for (index_t j = 0; j < space.size(); ++j) {
      if (j) out << ',';
      out << fmt9(space.d(i, j));
    }
    out << '\n';
  }
}

EpSpace space_from_points_csv(std::istream& in) {
  const auto rows = read_csv(in);
  if (rows.empty()) throw ParseError("empty point file");
  std::vector<std::vector<double>> points;
  for (const auto& row : rows) {
    std::vector<double> p;
    for (const auto& cell : row) p.push_back(parse_dist(cell));
    if (!points.empty() && p.size() != points.front().size()) {
      throw ParseError("points have differing dimensions");
    }
    points.push_back(std::move(p));
  }
  EpSpace space(points.size());
  for (index_t i = 0; i < points.size(); ++i) {
    for (index_t j = i + 1; j < points.size(); ++j) {
      double sq = 0.0;
      for (index_t d = 0; d < points[i].size(); ++d) {
        const double delta = points[i][d] - points[j][d];
        sq += delta * delta;
      }
      space.set(i, j, std::sqrt(sq));
    }
  }
  return space;
}

Json space_to_json(const EpSpace& space) {
  Json j;
  j["n"] = space.size();
  Json rows = Json::array();
  for (index_t i = 0; i < space.size(); ++i) {
    Json row = Json::array();
    for (index_t k = 0; k < space.size(); ++k) {
      const double v = space.d(i, k);
      if (v == kInf) {
        row.push_back("inf");
      } else {
        row.push_back(json_num(v));
      }
    }
    rows.push_back(std::move(row));
  }
  j["dist"] = std::move(rows);
  return j;
}

EpSpace space_from_json(const Json& j) {
  const index_t n = j.at("n").get<index_t>();
  std::vector<std::vector<double>> m;
  for (const auto& row : j.at("dist")) {
    std::vector<double> r;
    for (const auto& cell : row) {
      if (cell.is_string()) {
        if (!is_inf_token(cell.get<std::string>())) {
          throw ParseError("unexpected string in distance matrix");
        }
        r.push_back(kInf);
      } else {
        r.push_back(cell.get<double>());
      }
    }
    m.push_back(std::move(r));
  }
  if (m.size() != n) throw ParseError("declared size does not match the matrix");
  return EpSpace::from_rows(m);
}

Json neighborhood_to_json(const Neighborhood& nb) {
  Json j;
  j["base"] = nb.base;
  j["members"] = nb.members;
  j["radius"] = json_num(nb.radius);
  return j;
}

Neighborhood neighborhood_from_json(const Json& j) {
  Neighborhood nb;
  nb.base = j.at("base").get<index_t>();
  nb.members = j.at("members").get<std::vector<index_t>>();
  nb.radius = j.at("radius").get<double>();
  std::sort(nb.members.begin(), nb.members.end());
  return nb;
}

Json system_to_json(const NeighborhoodSystem& sys) {
  Json j = Json::array();
  for (const auto& nb : sys.items) j.push_back(neighborhood_to_json(nb));
  return j;
}

NeighborhoodSystem system_from_json(const Json& j) {
  NeighborhoodSystem sys;
  for (const auto& item : j) sys.items.push_back(neighborhood_from_json(item));
  return sys;
}

Json ray_system_to_json(const WeightedRaySystem& sys) {
  Json j;
  j["n"] = sys.size();
  Json rays = Json::array();
  for (const auto& r : sys.all_rays()) {
    rays.push_back(Json::array({r.source, r.target, json_num(r.weight)}));
  }
  j["rays"] = std::move(rays);
  return j;
}

WeightedRaySystem ray_system_from_json(const Json& j) {
  const index_t n = j.at("n").get<index_t>();
  std::vector<Ray> rays;
  for (const auto& r : j.at("rays")) {
    if (!r.is_array() || r.size() != 3) throw ParseError("each ray must be [x, y, w]");
    rays.push_back({r[0].get<index_t>(), r[1].get<index_t>(), r[2].get<double>()});
  }
  try {
    return WeightedRaySystem::from_rays(n, rays);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

namespace {

std::string leaf_label(const std::vector<std::string>& labels, index_t v) {
  return v < labels.size() ? labels[v] : std::to_string(v);
}

}  // namespace

Json merge_tree_to_json(const MergeTree& tree, const std::vector<std::string>& leaf_labels) {
  Json j;
  j["n"] = tree.vertex_count;
  Json th = Json::array();
  for (double t : tree.thresholds) th.push_back(json_num(t));
  j["thresholds"] = std::move(th);
  Json merges = Json::array();
  for (const auto& m : tree.merges) {
    Json e;
    e["threshold"] = json_num(m.threshold);
    e["joined"] = m.joined;
    e["rep"] = m.rep;
    merges.push_back(std::move(e));
  }
  j["merges"] = std::move(merges);
  Json leaves = Json::array();
  for (index_t v = 0; v < tree.vertex_count; ++v) leaves.push_back(leaf_label(leaf_labels, v));
  j["leaves"] = std::move(leaves);
  return j;
}

MergeTree merge_tree_from_json(const Json& j) {
  MergeTree tree;
  tree.vertex_count = j.at("n").get<index_t>();
  tree.thresholds = j.at("thresholds").get<std::vector<double>>();
  for (const auto& m : j.at("merges")) {
    MergeEvent ev;
    ev.threshold = m.at("threshold").get<double>();
    ev.joined = m.at("joined").get<std::vector<index_t>>();
    ev.rep = m.at("rep").get<index_t>();
    tree.merges.push_back(std::move(ev));
  }
  // Replay the merges to rebuild the per-threshold partitions.
  std::vector<index_t> rep(tree.vertex_count);
  for (index_t v = 0; v < tree.vertex_count; ++v) rep[v] = v;
  index_t next = 0;
  for (const double t : tree.thresholds) {
    while (next < tree.merges.size() && approx_eq(tree.merges[next].threshold, t)) {
      const auto& ev = tree.merges[next];
      for (index_t v = 0; v < tree.vertex_count; ++v) {
        for (index_t old : ev.joined) {
          if (rep[v] == old) rep[v] = ev.rep;
        }
      }
      ++next;
    }
    Partition part;
    part.rep = rep;
    for (index_t v = 0; v < tree.vertex_count; ++v) {
      if (rep[v] == v) ++part.count;
    }
    tree.components.push_back(std::move(part));
  }
  return tree;
}

std::string merge_tree_to_dot(const MergeTree& tree, const std::vector<std::string>& leaf_labels) {
  std::ostringstream out;
  out << "digraph dendrogram {\n  rankdir=BT;\n  node [shape=box];\n";
  for (index_t v = 0; v < tree.vertex_count; ++v) {
    out << "  p" << v << " [label=\"" << leaf_label(leaf_labels, v) << "\", shape=plaintext];\n";
  }
  // Current DOT node of each cluster representative.
  std::vector<std::string> node(tree.vertex_count);
  for (index_t v = 0; v < tree.vertex_count; ++v) node[v] = "p" + std::to_string(v);
  for (index_t m = 0; m < tree.merges.size(); ++m) {
    const auto& ev = tree.merges[m];
    const std::string id = "m" + std::to_string(m);
    out << "  " << id << " [label=\"" << fmt9(ev.threshold) << "\"];\n";
    for (index_t rep : ev.joined) {
      out << "  " << node[rep] << " -> " << id << ";\n";
    }
    node[ev.rep] = id;
  }
  out << "}\n";
  return out.str();
}

std::string graph_snapshot_dot(const FilteredGraph& graph, double s,
                               const std::vector<std::string>& labels) {
  std::ostringstream out;
  out << "graph scale_" << fmt9(s) << " {\n";
  for (index_t v = 0; v < graph.vertex_count(); ++v) {
    out << "  p" << v << " [label=\"" << leaf_label(labels, v) << "\"];\n";
  }
  for (const auto& e : graph.at_scale(s)) {
    out << "  p" << e.u << " -- p" << e.v << " [label=\"" << fmt9(e.w) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

void save_edge_csv(std::ostream& out, const FilteredGraph& graph) {
  out << "i,j,weight\n";
  for (const auto& e : graph.edges()) {
    out << e.u << ',' << e.v << ',' << fmt9(e.w) << '\n';
  }
}

namespace {

index_t parse_index(const std::string& t) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(t, &used);
    if (used != t.size() || v < 0) throw ParseError("bad vertex id: '" + t + "'");
    return static_cast<index_t>(v);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("bad vertex id: '" + t + "'");
  }
}

std::vector<std::vector<std::string>> edge_rows(std::istream& in, std::size_t min_fields,
                                                std::size_t numeric_probe) {
  auto rows = read_csv(in);
  if (!rows.empty() && rows.front().size() > numeric_probe &&
      !parses_as_number(rows.front()[numeric_probe])) {
    rows.erase(rows.begin());  // header line
  }
  for (const auto& row : rows) {
    if (row.size() < min_fields) throw ParseError("short row in CSV input");
  }
  return rows;
}

}  // namespace

WeightedDigraph load_edgelist_csv(std::istream& in) {
  const auto rows = edge_rows(in, 3, 2);
  if (rows.empty()) throw ParseError("empty edge list");
  std::vector<DirectedEdge> edges;
  index_t n = 0;
  for (const auto& row : rows) {
    DirectedEdge e{parse_index(row[0]), parse_index(row[1]), parse_dist(row[2])};
    n = std::max(n, std::max(e.src, e.dst) + 1);
    edges.push_back(e);
  }
  try {
    return WeightedDigraph(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

WeightedUndirectedGraph load_undirected_edgelist_csv(std::istream& in) {
  const auto rows = edge_rows(in, 3, 2);
  if (rows.empty()) throw ParseError("empty edge list");
  std::vector<UndirectedEdge> edges;
  index_t n = 0;
  for (const auto& row : rows) {
    UndirectedEdge e{parse_index(row[0]), parse_index(row[1]), parse_dist(row[2])};
    n = std::max(n, std::max(e.u, e.v) + 1);
    edges.push_back(e);
  }
  try {
    return WeightedUndirectedGraph(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::vector<TransferRecord> load_transfer_csv(std::istream& in) {
  const auto rows = edge_rows(in, 5, 2);
  std::vector<TransferRecord> records;
  for (const auto& row : rows) {
    TransferRecord r;
    r.src_account = row[0];
    r.dst_account = row[1];
    r.bytes = parse_dist(row[2]);
    try {
      r.src_ts = std::stoll(row[3]);
      r.dst_ts = std::stoll(row[4]);
    } catch (const std::exception&) {
      throw ParseError("bad timestamp in transfer row");
    }
    records.push_back(std::move(r));
  }
  return records;
}

Corpus load_corpus_dir(const std::string& path) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(path)) throw ParseError("corpus path is not a directory: " + path);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(path)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::string> texts;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw ParseError("cannot read " + f.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    texts.push_back(buf.str());
  }
  if (texts.empty()) throw ParseError("corpus directory holds no files");
  return corpus_from_texts(texts);
}

Corpus load_corpus_jsonl(std::istream& in) {
  std::vector<std::vector<std::string>> docs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad JSON line: ") + e.what());
    }
    docs.push_back(j.at("tokens").get<std::vector<std::string>>());
  }
  if (docs.empty()) throw ParseError("empty corpus");
  return corpus_from_token_lists(docs);
}

}  // namespace epc
