#include "sstl/space.hpp"

#include "sstl/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace sstl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

} // namespace

SpaceModel::SpaceModel(std::vector<std::string> locations, const std::vector<Edge>& edges)
    : ids_(std::move(locations)) {
  if (ids_.empty()) throw SpaceError("space needs at least one location");
  index_.reserve(ids_.size());
  for (LocationIndex i = 0; i < ids_.size(); ++i) {
    if (ids_[i].empty()) throw SpaceError("empty location id");
    if (!index_.emplace(ids_[i], i).second) {
      throw SpaceError("duplicate location id '" + ids_[i] + "'");
    }
  }

  const std::size_t n = ids_.size();
  adjacency_.resize(n);
  std::set<std::pair<LocationIndex, LocationIndex>> seen;
  for (const auto& e : edges) {
    const auto a = find(e.from);
    const auto b = find(e.to);
    if (!a) throw SpaceError("edge references unknown location '" + e.from + "'");
    if (!b) throw SpaceError("edge references unknown location '" + e.to + "'");
    if (*a == *b) throw SpaceError("self-loop on location '" + e.from + "'");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw SpaceError("edge " + e.from + "-" + e.to + " has non-positive weight");
    }
    if (!seen.emplace(std::min(*a, *b), std::max(*a, *b)).second) {
      throw SpaceError("edge " + e.from + "-" + e.to + " listed twice");
    }
    adjacency_[*a].push_back({*b, e.weight});
    adjacency_[*b].push_back({*a, e.weight});
    ++edge_count_;
  }

  dist_.assign(n * n, kInf);
  using Item = std::pair<double, LocationIndex>;
  std::vector<std::size_t> hops(n);
  std::vector<LocationIndex> bfs;
  bfs.reserve(n);
  for (LocationIndex src = 0; src < n; ++src) {
    double* row = &dist_[src * n];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    row[src] = 0.0;
    queue.emplace(0.0, src);
    while (!queue.empty()) {
      const auto [d, u] = queue.top();
      queue.pop();
      if (d > row[u]) continue;
      for (const auto& nb : adjacency_[u]) {
        const double cand = d + nb.weight;
        if (cand < row[nb.location]) {
          row[nb.location] = cand;
          queue.emplace(cand, nb.location);
        }
      }
    }
    for (LocationIndex j = 0; j < n; ++j) {
      if (std::isfinite(row[j])) diameter_ = std::max(diameter_, row[j]);
    }

    std::fill(hops.begin(), hops.end(), std::numeric_limits<std::size_t>::max());
    bfs.clear();
    hops[src] = 0;
    bfs.push_back(src);
    for (std::size_t head = 0; head < bfs.size(); ++head) {
      const LocationIndex u = bfs[head];
      hop_diameter_ = std::max(hop_diameter_, hops[u]);
      for (const auto& nb : adjacency_[u]) {
        if (hops[nb.location] == std::numeric_limits<std::size_t>::max()) {
          hops[nb.location] = hops[u] + 1;
          bfs.push_back(nb.location);
        }
      }
    }
  }
}

std::optional<LocationIndex> SpaceModel::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

LocationIndex SpaceModel::index_of(std::string_view id) const {
  if (auto l = find(id)) return *l;
  throw SpaceError("unknown location '" + std::string(id) + "'");
}

LocationSet SpaceModel::locations_in_range(LocationIndex l, double d1, double d2) const {
  if (l >= size()) throw SpaceError("location index out of range");
  if (!(d1 >= 0.0) || !(d1 <= d2)) {
    throw SpaceError("distance bounds must satisfy 0 <= d1 <= d2");
  }
  LocationSet out;
  const double* row = &dist_[l * size()];
  for (LocationIndex j = 0; j < size(); ++j) {
    if (std::isfinite(row[j]) && d1 <= row[j] && row[j] <= d2) out.push_back(j);
  }
  return out;
}

LocationSet SpaceModel::external_boundary(std::span<const LocationIndex> area) const {
  std::vector<char> inside(size(), 0);
  for (auto l : area) inside.at(l) = 1;
  std::vector<char> mark(size(), 0);
  for (auto l : area) {
    for (const auto& nb : adjacency_[l]) {
      if (!inside[nb.location]) mark[nb.location] = 1;
    }
  }
  LocationSet out;
  for (LocationIndex j = 0; j < size(); ++j) {
    if (mark[j]) out.push_back(j);
  }
  return out;
}

std::vector<Edge> SpaceModel::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (LocationIndex a = 0; a < size(); ++a) {
    for (const auto& nb : adjacency_[a]) {
      if (a < nb.location) out.push_back({ids_[a], ids_[nb.location], nb.weight});
    }
  }
  return out;
}

std::string grid_id(std::size_t i, std::size_t j) {
  return std::to_string(i) + "_" + std::to_string(j);
}

SpaceModel regular_grid(std::size_t k, double delta) {
  if (k == 0) throw SpaceError("grid size K must be at least 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw SpaceError("grid spacing must be positive");
  std::vector<std::string> ids;
  ids.reserve(k * k);
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = 1; j <= k; ++j) {
      ids.push_back(grid_id(i, j));
      if (j < k) edges.push_back({grid_id(i, j), grid_id(i, j + 1), delta});
      if (i < k) edges.push_back({grid_id(i, j), grid_id(i + 1, j), delta});
    }
  }
  return SpaceModel(std::move(ids), edges);
}

SpaceModel read_graph(std::istream& in) {
  enum class Section { None, Locations, Edges } section = Section::None;
  std::vector<std::string> ids;
  std::vector<Edge> edges;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line == "#locations") {
      section = Section::Locations;
      continue;
    }
    if (line == "#edges") {
      section = Section::Edges;
      continue;
    }
    switch (section) {
      case Section::None:
        throw FormatError("expected '#locations' header", line_no);
      case Section::Locations:
        ids.push_back(line);
        break;
      case Section::Edges: {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) fields.push_back(trim(field));
        if (fields.size() != 3) {
          throw FormatError("edge line needs src<TAB>dst<TAB>weight", line_no);
        }
        double w = 0.0;
        const auto& wt = fields[2];
        auto [ptr, ec] = std::from_chars(wt.data(), wt.data() + wt.size(), w);
        if (ec != std::errc() || ptr != wt.data() + wt.size()) {
          throw FormatError("bad edge weight '" + wt + "'", line_no);
        }
        edges.push_back({fields[0], fields[1], w});
        break;
      }
    }
  }
  return SpaceModel(std::move(ids), edges);
}

SpaceModel read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open graph file " + path.string());
  return read_graph(in);
}

void write_graph(const SpaceModel& space, std::ostream& out) {
  out << "#locations\n";
  for (const auto& id : space.ids()) out << id << '\n';
  out << "#edges\n";
  for (const auto& e : space.edges()) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), e.weight);
    out << e.from << '\t' << e.to << '\t' << std::string(buf.data(), end) << '\n';
  }
}

} // namespace sstl
