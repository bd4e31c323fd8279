#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpd/perm.hpp"

namespace bpd {

// The six tile kinds of a bumpless pipe dream, plus the bump tile that is
// allowed exactly once in an "almost" diagram. Edge-connection semantics
// (which of the four tile edges carry pipe segments, and how they pair):
//   Blank      {}
//   Horizontal {W-E}
//   Vertical   {N-S}
//   Cross      {W-E, N-S}
//   RTile      {S-E}
//   JTile      {W-N}
//   Bump       {S-E, W-N}
enum class Tile : std::uint8_t { Blank, Horizontal, Vertical, Cross, RTile, JTile, Bump };

char tile_char(Tile t);
std::optional<Tile> tile_from_char(char c);

bool edge_n(Tile t);
bool edge_s(Tile t);
bool edge_e(Tile t);
bool edge_w(Tile t);

struct Pos {
  int row = 0, col = 0;
  auto operator<=>(const Pos&) const = default;
};

std::string to_string(Pos p);  // "(r,c)"

// Raw n x n tile array in matrix coordinates: row 1 on top, column 1 on the
// left. Carries no validity guarantees; Diagram wraps a validated grid.
struct TileGrid {
  int n = 0;
  std::vector<Tile> tiles;  // row-major

  TileGrid() = default;
  explicit TileGrid(int size) : n(size), tiles(static_cast<size_t>(size) * size, Tile::Blank) {}

  Tile& at(int r, int c) { return tiles[static_cast<size_t>(r - 1) * n + (c - 1)]; }
  Tile at(int r, int c) const { return tiles[static_cast<size_t>(r - 1) * n + (c - 1)]; }
  bool operator==(const TileGrid&) const = default;
};

class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Segment kinds inside a tile. An r-shaped turn is an SE segment (in an
// r-tile or a bump), a j-shaped turn is a WN segment (j-tile or bump).
enum class Seg : std::uint8_t { NS, WE, SE, WN };

struct PipeStep {
  Pos pos;
  Seg seg;
  bool operator==(const PipeStep&) const = default;
};

// Low-level pipe tracing on edge-consistent grids. Pipes are labeled by
// their south-edge entry column; each travels only north and east.
std::vector<PipeStep> trace_pipe(const TileGrid& g, int south_col);
std::vector<std::vector<PipeStep>> trace_all_pipes(const TileGrid& g);
Permutation grid_readout(const TileGrid& g);
// Unique cross shared by pipes p and q, if any.
std::optional<Pos> grid_cross_of(const TileGrid& g, int p, int q);
// Pipe owning the given segment of the given tile; 0 if no pipe uses it.
int grid_owner(const TileGrid& g, Pos pos, Seg seg);
// Number of unit cells weakly southeast of the pipe's path: for each row the
// pipe passes, n minus the easternmost column it occupies there. Strictly
// decreases under droops and cross-bump swaps, increases under undroops.
long grid_pipe_area(const TileGrid& g, int pipe);

std::optional<Pos> pipe_turn_in_row(const std::vector<PipeStep>& path, int row, Seg corner);
std::optional<Pos> pipe_turn_in_col(const std::vector<PipeStep>& path, int col, Seg corner);

// A validated diagram: a bumpless pipe dream (no bump tile) or an almost
// bumpless pipe dream (exactly one bump). Checks edge matching, boundary
// conditions, pipe structure and reducedness (no two pipes cross twice).
class Diagram {
public:
  static Diagram validate(TileGrid grid);  // throws ValidationError
  static std::optional<Diagram> try_validate(TileGrid grid, std::string* why = nullptr);

  int n() const { return g_.n; }
  Tile at(int r, int c) const { return g_.at(r, c); }
  const TileGrid& grid() const { return g_; }
  const Permutation& perm() const { return perm_; }

  bool is_bpd() const { return !bump_.has_value(); }
  std::optional<Pos> bump() const { return bump_; }

  std::vector<Pos> blanks() const;  // row-major order
  int count(Tile t) const;

  const std::vector<PipeStep>& path(int pipe) const { return paths_[pipe - 1]; }
  std::optional<Pos> find_cross(int p, int q) const;
  std::map<std::pair<Pos, Seg>, int> segment_owners() const;

  std::optional<Pos> r_turn_in_row(int pipe, int row) const;
  std::optional<Pos> r_turn_in_col(int pipe, int col) const;
  std::optional<Pos> j_turn_in_row(int pipe, int row) const;
  std::optional<Pos> j_turn_in_col(int pipe, int col) const;

  long pipe_area(int pipe) const { return grid_pipe_area(g_, pipe); }

  bool operator==(const Diagram& o) const { return g_ == o.g_; }

private:
  Diagram(TileGrid g, Permutation p, std::optional<Pos> bump,
          std::vector<std::vector<PipeStep>> paths,
          std::map<std::pair<int, int>, Pos> crosses);

  TileGrid g_;
  Permutation perm_;
  std::optional<Pos> bump_;
  std::vector<std::vector<PipeStep>> paths_;
  std::map<std::pair<int, int>, Pos> crosses_;  // {min label, max label} -> position
};

// The canonical j-tile-free diagram of pi whose blanks form the Rothe diagram.
Diagram rothe(const Permutation& pi);

// Every complete edge-consistent tiling by the six bumpless kinds (double
// crossings not yet excluded), found by row-major backtracking.
std::vector<TileGrid> enumerate_complete_tilings(int n);

// Independent recount of the complete tilings by profile dynamic programming
// over edge states; used to cross-check the backtracking enumerator.
std::uint64_t count_complete_tilings_dp(int n);

// The full finite set BPD(pi), sorted by rendered text.
std::vector<Diagram> enumerate_bpds(const Permutation& pi);

// One backtracking pass bucketing all valid n x n diagrams by readout.
std::map<Permutation, std::vector<Diagram>> enumerate_bpds_by_perm(int n);

// Blank-tile decoration label: x contributes x_row, -y contributes -y_col.
enum class Label : std::uint8_t { X, NegY };

// Diagram file format: line 1 is n in decimal; lines 2..n+1 hold exactly n
// characters from {. - | + r j b}; decorated files replace '.' by 'x' or 'y'.
// Trailing newline required, no other whitespace.
struct ParsedDiagram {
  Diagram diagram;
  std::optional<std::map<Pos, Label>> labels;  // present iff file is decorated
};

ParsedDiagram parse_diagram(const std::string& text);
std::string render(const Diagram& d);
std::string render_grid(const TileGrid& g);

}  // namespace bpd
