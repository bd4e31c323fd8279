#include <doctest.h>

#include <set>

#include "bpd/grid.hpp"
#include "bpd/poly.hpp"

using namespace bpd;

namespace {

Diagram from_text(const std::string& text) { return parse_diagram(text).diagram; }

Int coeff_sum(const Poly& p) {
  Int s = 0;
  for (const auto& [m, c] : p.terms()) s += c;
  return s;
}

}  // namespace

TEST_CASE("validate the small reference diagrams") {
  const Diagram identity = from_text("2\nr-\n|r\n");
  CHECK(identity.is_bpd());
  CHECK(identity.perm() == Permutation({1, 2}));
  CHECK(identity.blanks().empty());

  const Diagram s21 = from_text("2\n.r\nr+\n");
  CHECK(s21.is_bpd());
  CHECK(s21.perm() == Permutation({2, 1}));
  CHECK(s21.blanks() == std::vector<Pos>{{1, 1}});

  const Diagram almost = from_text("2\n.r\nrb\n");
  CHECK_FALSE(almost.is_bpd());
  CHECK(almost.bump() == Pos{2, 2});
  CHECK(almost.perm() == Permutation({1, 2}));
}

TEST_CASE("validate rejects malformed grids") {
  // North boundary carries a segment.
  CHECK_THROWS_WITH_AS(from_text("2\n|r\nrr\n"), doctest::Contains("boundary"), ValidationError);
  // Missing south entry.
  CHECK_THROWS_WITH_AS(from_text("2\nr-\n.r\n"), doctest::Contains("boundary"), ValidationError);
  // Interior edge mismatch.
  CHECK_THROWS_WITH_AS(from_text("3\nr--\n||-\n||r\n"), doctest::Contains("edge mismatch"),
                       ValidationError);
  // Two bumps (edge-consistent block layout, still rejected).
  CHECK_THROWS_WITH_AS(from_text("4\n.r--\nrb--\n||.r\n||rb\n"),
                       doctest::Contains("more than one bump"), ValidationError);
}

TEST_CASE("double crossings are rejected") {
  // Complete 4x4 tilings include configurations where two pipes cross twice;
  // the validity filter must name the offense.
  int rejected = 0;
  for (auto& g : enumerate_complete_tilings(4)) {
    std::string why;
    if (!Diagram::try_validate(std::move(g), &why)) {
      CHECK(why.find("double crossing") != std::string::npos);
      ++rejected;
    }
  }
  CHECK(rejected > 0);
}

TEST_CASE("read_permutation inverts the rothe construction") {
  CHECK(from_text("2\nr-\n|r\n").perm() == Permutation({1, 2}));
  CHECK(from_text("2\n.r\nr+\n").perm() == Permutation({2, 1}));
  for (const auto& pi : all_permutations(5)) CHECK(rothe(pi).perm() == pi);
}

TEST_CASE("rothe produces the expected diagrams") {
  CHECK(render(rothe(Permutation({1, 2}))) == "2\nr-\n|r\n");
  CHECK(render(rothe(Permutation({2, 1}))) == "2\n.r\nr+\n");
  CHECK(rothe(Permutation({3, 2, 1})).blanks() ==
        std::vector<Pos>{{1, 1}, {1, 2}, {2, 1}});
  for (const auto& pi : all_permutations(4)) {
    CHECK(rothe(pi).count(Tile::JTile) == 0);
    const auto all = enumerate_bpds(pi);
    bool found = false;
    for (const auto& d : all)
      if (d == rothe(pi)) found = true;
    CHECK(found);
  }
}

TEST_CASE("enumerate_bpds matches the polynomial counts") {
  CHECK(enumerate_bpds(Permutation({1, 2})).size() == 1);
  CHECK(enumerate_bpds(Permutation({1, 2}))[0].blanks().empty());

  const auto d132 = enumerate_bpds(Permutation({1, 3, 2}));
  REQUIRE(d132.size() == 2);
  std::set<int> blank_rows;
  for (const auto& d : d132) {
    REQUIRE(d.blanks().size() == 1);
    blank_rows.insert(d.blanks()[0].row);
  }
  CHECK(blank_rows == std::set<int>{1, 2});
  // |BPD(pi)| equals the single Schubert polynomial evaluated at all ones.
  CHECK(coeff_sum(schubert_dd(Permutation({1, 3, 2}), false)) == 2);

  CHECK(enumerate_bpds(Permutation({2, 1, 4, 3})).size() == 3);
  CHECK(coeff_sum(schubert_dd(Permutation({2, 1, 4, 3}), false)) == 3);
}

TEST_CASE("pipe segment ownership") {
  const Diagram s21 = from_text("2\n.r\nr+\n");
  auto owners = s21.segment_owners();
  CHECK(owners[{{2, 2}, Seg::NS}] == 2);
  CHECK(owners[{{2, 2}, Seg::WE}] == 1);

  const Diagram almost = from_text("2\n.r\nrb\n");
  auto aowners = almost.segment_owners();
  CHECK(aowners[{{2, 2}, Seg::SE}] == 2);
  CHECK(aowners[{{2, 2}, Seg::WN}] == 1);

  const Diagram identity = from_text("2\nr-\n|r\n");
  auto iowners = identity.segment_owners();
  CHECK(iowners[{{1, 1}, Seg::SE}] == 1);
  CHECK(iowners[{{2, 2}, Seg::SE}] == 2);
}

TEST_CASE("find_cross locates the unique crossing") {
  const Diagram s21 = from_text("2\n.r\nr+\n");
  CHECK(s21.find_cross(1, 2) == Pos{2, 2});
  CHECK(from_text("2\nr-\n|r\n").find_cross(1, 2) == std::nullopt);
  CHECK_THROWS_AS(s21.find_cross(1, 1), std::invalid_argument);

  const Diagram r321 = rothe(Permutation({3, 2, 1}));
  auto c = r321.find_cross(1, 3);
  REQUIRE(c.has_value());
  CHECK(r321.at(c->row, c->col) == Tile::Cross);
  auto owners = r321.segment_owners();
  const bool one_three = (owners[{*c, Seg::NS}] == 1 && owners[{*c, Seg::WE}] == 3) ||
                         (owners[{*c, Seg::NS}] == 3 && owners[{*c, Seg::WE}] == 1);
  CHECK(one_three);
}

TEST_CASE("parse and render round-trip") {
  CHECK(render(from_text("2\n.r\nr+\n")) == "2\n.r\nr+\n");
  CHECK_THROWS_WITH_AS(parse_diagram("2\n.r\nr%\n"), doctest::Contains("bad character"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(parse_diagram("2\n.r\nr\n"), doctest::Contains("ragged"),
                       ValidationError);
  CHECK_THROWS_AS(parse_diagram("2\n.r\nr+"), ValidationError);      // no trailing newline
  CHECK_THROWS_AS(parse_diagram("2\n.r\nr+\nx\n"), ValidationError); // trailing content
  CHECK_THROWS_AS(parse_diagram(""), ValidationError);
  CHECK_THROWS_AS(parse_diagram("x\n"), ValidationError);

  for (const auto& pi : all_permutations(4))
    for (const auto& d : enumerate_bpds(pi)) {
      const ParsedDiagram back = parse_diagram(render(d));
      CHECK(back.diagram == d);
      CHECK_FALSE(back.labels.has_value());
    }
}

TEST_CASE("decorated files label every blank") {
  const ParsedDiagram p = parse_diagram("2\nxr\nr+\n");
  REQUIRE(p.labels.has_value());
  CHECK(p.labels->at({1, 1}) == Label::X);
  const ParsedDiagram q = parse_diagram("2\nyr\nr+\n");
  CHECK(q.labels->at({1, 1}) == Label::NegY);
  // A '.' in a decorated file is an error.
  CHECK_THROWS_AS(parse_diagram("3\nx.r\nr+-\n.|r\n"), ValidationError);
}

TEST_CASE("blank and cross counts equal the length") {
  for (int n = 1; n <= 4; ++n)
    for (const auto& pi : all_permutations(n))
      for (const auto& d : enumerate_bpds(pi)) {
        CHECK(static_cast<int>(d.blanks().size()) == pi.length());
        CHECK(d.count(Tile::Cross) == pi.length());
      }
}

TEST_CASE("crossing pairs are exactly the inversion pairs") {
  for (const auto& pi : all_permutations(4)) {
    const Permutation inv = pi.inverse();
    for (const auto& d : enumerate_bpds(pi)) {
      for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) {
          const bool crossed = d.find_cross(a, b).has_value();
          CHECK(crossed == (inv(a) > inv(b)));
        }
    }
  }
}

TEST_CASE("pipes are monotone staircases") {
  for (const auto& pi : all_permutations(4))
    for (const auto& d : enumerate_bpds(pi))
      for (int p = 1; p <= 4; ++p) {
        const auto& path = d.path(p);
        for (size_t i = 1; i < path.size(); ++i) {
          CHECK(path[i].pos.row <= path[i - 1].pos.row);
          CHECK(path[i].pos.col >= path[i - 1].pos.col);
        }
        CHECK(path.front().pos.row == 4);
        CHECK(path.front().pos.col == p);
      }
}

TEST_CASE("backtracking enumeration matches independent recounts") {
  // Small sizes: compare against the profile-DP tiling count.
  for (int n = 1; n <= 4; ++n)
    CHECK(count_complete_tilings_dp(n) == enumerate_complete_tilings(n).size());

  // n = 2: the full 6^(n^2) brute force filtered by validate.
  std::set<std::string> brute;
  const Tile kinds[6] = {Tile::Blank,  Tile::Horizontal, Tile::Vertical,
                         Tile::Cross,  Tile::RTile,      Tile::JTile};
  std::vector<int> digits(4, 0);
  for (;;) {
    TileGrid g(2);
    for (int i = 0; i < 4; ++i) g.tiles[i] = kinds[digits[i]];
    if (auto d = Diagram::try_validate(std::move(g)); d && d->is_bpd()) brute.insert(render(*d));
    int pos = 0;
    while (pos < 4 && ++digits[pos] == 6) digits[pos++] = 0;
    if (pos == 4) break;
  }
  std::set<std::string> enumerated;
  for (const auto& [pi, ds] : enumerate_bpds_by_perm(2))
    for (const auto& d : ds) enumerated.insert(render(d));
  CHECK(brute == enumerated);
}
