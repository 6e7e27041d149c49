#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sstl {

using LocationIndex = std::size_t;

/// Sorted, duplicate-free list of location indices.
using LocationSet = std::vector<LocationIndex>;

struct Edge {
  std::string from;
  std::string to;
  double weight = 1.0;
};

struct Neighbour {
  LocationIndex location;
  double weight;
};

/// Weighted undirected graph with its all-pairs shortest-path distances.
///
/// Immutable once built; distances are computed once in the constructor
/// (Dijkstra from every source, exact for positive weights). Disconnected
/// pairs are at distance +inf and never qualify for a range query.
class SpaceModel {
public:
  /// Throws SpaceError on an empty location list, a duplicate id, a
  /// self-loop, an edge with an unknown endpoint, a repeated edge or a
  /// weight that is not a finite positive number.
  SpaceModel(std::vector<std::string> locations, const std::vector<Edge>& edges);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(LocationIndex l) const { return ids_.at(l); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  std::optional<LocationIndex> find(std::string_view id) const;
  /// Throws SpaceError for an unknown id.
  LocationIndex index_of(std::string_view id) const;

  std::span<const Neighbour> neighbours(LocationIndex l) const { return adjacency_.at(l); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  double distance(LocationIndex a, LocationIndex b) const { return dist_[a * size() + b]; }

  /// Largest finite weighted distance.
  double diameter() const noexcept { return diameter_; }
  /// Largest finite shortest-path length counted in edges.
  std::size_t hop_diameter() const noexcept { return hop_diameter_; }

  /// { l' | d1 <= d(l, l') <= d2 }, bounds inclusive, finite distances only.
  /// `d2` may be +inf. Throws SpaceError unless 0 <= d1 <= d2.
  LocationSet locations_in_range(LocationIndex l, double d1, double d2) const;

  /// { l not in A | some l' in A has an edge to l }. `area` need not be sorted.
  LocationSet external_boundary(std::span<const LocationIndex> area) const;

  /// Edges as given at construction, each undirected edge once.
  std::vector<Edge> edges() const;

private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, LocationIndex> index_;
  std::vector<std::vector<Neighbour>> adjacency_;
  std::size_t edge_count_ = 0;
  std::vector<double> dist_;
  double diameter_ = 0.0;
  std::size_t hop_diameter_ = 0;
};

/// Location id of grid cell (i, j), 1-based: "i_j".
std::string grid_id(std::size_t i, std::size_t j);

/// K x K four-neighbour grid; every edge has weight `delta`. Cells are
/// ordered row-major, so cell (i, j) has index (i-1)*K + (j-1).
/// Throws SpaceError for K = 0 or delta <= 0.
SpaceModel regular_grid(std::size_t k, double delta);

/// Graph TSV format:
///
///     #locations
///     a
///     b
///     #edges
///     a<TAB>b<TAB>1.5
///
/// Blank lines are ignored. Throws FormatError (with line) or SpaceError.
SpaceModel read_graph(std::istream& in);
SpaceModel read_graph(const std::filesystem::path& path);
void write_graph(const SpaceModel& space, std::ostream& out);

} // namespace sstl
