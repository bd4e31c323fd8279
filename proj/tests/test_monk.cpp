#include <doctest.h>

#include <set>

#include "bpd/monk.hpp"
#include "bpd/verify.hpp"

using namespace bpd;

namespace {

Diagram from_text(const std::string& text) { return parse_diagram(text).diagram; }

struct Replay {
  TileGrid initial;
  std::vector<TraceStep> steps;
  std::vector<TileGrid> after;
};

StepObserver record(Replay& r) {
  return [&r](const TraceStep& s, const TileGrid& g) {
    r.steps.push_back(s);
    r.after.push_back(g);
  };
}

int count_kind(const Trace& t, TraceStep::Kind k) {
  int c = 0;
  for (const auto& s : t)
    if (s.kind == k) ++c;
  return c;
}

std::vector<int> blanks_per_row(const Diagram& d) {
  std::vector<int> rows(d.n(), 0);
  for (Pos b : d.blanks()) ++rows[b.row - 1];
  return rows;
}

}  // namespace

TEST_CASE("min_droop relocates the corner southeast") {
  const Diagram identity = from_text("2\nr-\n|r\n");
  const DroopResult res = min_droop(identity, {1, 1});
  CHECK(res.landing == Pos{2, 2});
  CHECK(render(res.diagram) == "2\n.r\nrb\n");
  CHECK(res.diagram.perm() == identity.perm());

  // Dropping pipe 1 of rothe(132) lands on the blank at (2,2) as a j-tile.
  const Diagram r132 = rothe(Permutation({1, 3, 2}));
  const DroopResult res2 = min_droop(r132, {1, 1});
  CHECK(res2.landing == Pos{2, 2});
  CHECK(res2.diagram.at(2, 2) == Tile::JTile);
  CHECK(res2.diagram.perm() == r132.perm());

  CHECK_THROWS_AS(min_droop(identity, {1, 2}), std::invalid_argument);
  // Pipe 2 exits last in S_2; no upward cover transposition exists for it.
  CHECK_THROWS_AS(min_droop(identity, {2, 2}), std::invalid_argument);
}

TEST_CASE("min_undroop inverts min_droop") {
  const Diagram almost = from_text("2\n.r\nrb\n");
  const DroopResult res = min_undroop(almost, {2, 2});
  CHECK(res.landing == Pos{1, 1});
  CHECK(render(res.diagram) == "2\nr-\n|r\n");

  // The 21 diagram has no j-shaped turn anywhere.
  const Diagram s21 = from_text("2\n.r\nr+\n");
  for (int r = 1; r <= 2; ++r)
    for (int c = 1; c <= 2; ++c) CHECK_THROWS_AS(min_undroop(s21, {r, c}), std::invalid_argument);

  // Round trip over every admissible r-turn in S_4.
  for (const auto& pi : all_permutations(4)) {
    const Permutation inv = pi.inverse();
    for (const auto& d : enumerate_bpds(pi)) {
      for (int p = 1; p <= 4; ++p) {
        bool has_cover = false;
        for (int y = inv(p) + 1; y <= 4; ++y)
          if (pi.is_cover_t(inv(p), y)) has_cover = true;
        if (!has_cover) continue;
        for (const auto& step : d.path(p)) {
          if (step.seg != Seg::SE) continue;
          const DroopResult down = min_droop(d, step.pos);
          const DroopResult up = min_undroop(down.diagram, down.landing);
          CHECK(up.landing == step.pos);
          CHECK(up.diagram == d);
        }
      }
    }
  }
}

TEST_CASE("resolve_at_r on the S_2 seed") {
  const Diagram identity = from_text("2\nr-\n|r\n");
  Replay replay{identity.grid(), {}, {}};
  const InsertResult res = resolve_at_r(identity, {1, 1}, record(replay));
  CHECK(res.x == 1);
  CHECK(res.y == 2);
  CHECK(render(res.diagram) == "2\n.r\nr+\n");
  REQUIRE(res.trace.size() == 2);
  CHECK(res.trace[0].to_string() == "droop (1,1)->(2,2)");
  CHECK(res.trace[1].to_string() == "finalize cross(2,2)");
}

TEST_CASE("resolve_at_r sweep over S_4") {
  // Every admissible insertion produces a cover diagram, preserves row blank
  // counts except for one new blank on the vacated row, stays within the
  // n^2 step bound, and every intermediate state is a valid (almost) BPD of
  // the unchanged permutation.
  int multi_droop_runs = 0, swap_runs = 0;
  for (const auto& pi : all_permutations(4)) {
    const Permutation inv = pi.inverse();
    for (const auto& d : enumerate_bpds(pi)) {
      for (int p = 1; p <= 4; ++p) {
        const int x = inv(p);
        bool has_cover = false;
        for (int y = x + 1; y <= 4; ++y)
          if (pi.is_cover_t(x, y)) has_cover = true;
        if (!has_cover) continue;
        for (const auto& step : d.path(p)) {
          if (step.seg != Seg::SE) continue;
          Replay replay{d.grid(), {}, {}};
          const InsertResult res = resolve_at_r(d, step.pos, record(replay));
          CHECK(res.x == x);
          CHECK(res.diagram.perm() == pi.apply_t(res.x, res.y));
          CHECK(pi.is_cover_t(res.x, res.y));

          const int droops = count_kind(res.trace, TraceStep::Kind::Droop);
          const int swaps = count_kind(res.trace, TraceStep::Kind::Swap);
          CHECK(droops + swaps <= 16);
          if (droops >= 2) ++multi_droop_runs;
          if (swaps >= 1) ++swap_runs;

          std::vector<int> expect = blanks_per_row(d);
          ++expect[step.pos.row - 1];
          CHECK(blanks_per_row(res.diagram) == expect);

          for (size_t i = 0; i + 1 < replay.after.size(); ++i) {
            auto mid = Diagram::try_validate(replay.after[i]);
            REQUIRE(mid.has_value());
            CHECK(mid->perm() == pi);
          }
        }
      }
    }
  }
  // The S_4 sweep exercises both recursion and cross-bump swaps.
  CHECK(multi_droop_runs >= 2);
  CHECK(swap_runs >= 1);
}

TEST_CASE("cross_bump_swap on every swap arising in S_4 runs") {
  int seen = 0;
  for (const auto& pi : all_permutations(4)) {
    for (int alpha = 1; alpha < 4; ++alpha) {
      if (!monk_targets(pi, alpha).precondition) continue;
      const auto run = [&](const Diagram& d) {
        Replay replay{d.grid(), {}, {}};
        phi_forward(pi, alpha, d, record(replay));
        for (size_t i = 0; i < replay.steps.size(); ++i) {
          if (replay.steps[i].kind != TraceStep::Kind::Swap) continue;
          ++seen;
          const Pos bump = replay.steps[i].from, cross = replay.steps[i].to;
          // The recorded pre-state differs from the post-state by one swap,
          // except that the algorithm records the swap start as the position
          // where the bump had just been created.
          TileGrid pre = (i == 0) ? replay.initial : replay.after[i - 1];
          const Diagram before = Diagram::validate(pre);
          CHECK(before.bump() == bump);
          const Diagram after = cross_bump_swap(before, cross);
          CHECK(after.grid() == replay.after[i]);
          CHECK(after.bump() == cross);
          // Corner ownership flips between the r- and j-shaped turns.
          CHECK(grid_owner(pre, bump, Seg::WN) == grid_owner(replay.after[i], cross, Seg::SE));
          CHECK(grid_owner(pre, bump, Seg::SE) == grid_owner(replay.after[i], cross, Seg::WN));
          // Swapping back restores the original.
          CHECK(cross_bump_swap(after, bump) == before);
        }
      };
      for (const auto& d : enumerate_bpds(pi)) run(d);
      for (int k : monk_targets(pi, alpha).ks)
        for (const auto& d : enumerate_bpds(pi.apply_t(k, alpha))) run(d);
    }
  }
  CHECK(seen >= 1);

  const Diagram s21 = from_text("2\n.r\nr+\n");
  CHECK_THROWS_AS(cross_bump_swap(s21, {2, 2}), std::invalid_argument);
  // Bump pipes that never cross cannot swap.
  const Diagram almost = from_text("2\n.r\nrb\n");
  CHECK_THROWS_AS(cross_bump_swap(almost, {2, 2}), std::invalid_argument);
}

TEST_CASE("resolve_at_j on the S_2 example") {
  const Diagram almost = from_text("2\n.r\nrb\n");
  const MonkOutcome out = resolve_at_j(almost, {2, 2});
  CHECK(out.kind == MonkKind::Shrunk);
  CHECK(render(out.diagram) == "2\nr-\n|r\n");
  REQUIRE(out.trace.size() == 2);
  CHECK(out.trace[0].to_string() == "undroop (2,2)->(1,1)");
  CHECK(out.trace[1].to_string() == "finalize shrink row 1");
}

TEST_CASE("phi on the S_2 and 132 examples") {
  const Permutation id2({1, 2});
  const MonkOutcome up = phi_forward(id2, 1, from_text("2\nr-\n|r\n"));
  CHECK(up.kind == MonkKind::CoverUp);
  CHECK(up.index == 2);
  CHECK(render(up.diagram) == "2\n.r\nr+\n");

  const MonkOutcome down = phi_backward(id2, 1, from_text("2\n.r\nr+\n"));
  CHECK(down.kind == MonkKind::Shrunk);
  CHECK(render(down.diagram) == "2\nr-\n|r\n");

  // The two diagrams of 132 map to distinct covers 312 and 231.
  const Permutation pi132({1, 3, 2});
  std::set<std::string> images;
  std::set<std::vector<int>> readouts;
  for (const auto& d : enumerate_bpds(pi132)) {
    const MonkOutcome out = phi_forward(pi132, 1, d);
    images.insert(render(out.diagram));
    readouts.insert(out.diagram.perm().one_line());
  }
  CHECK(images.size() == 2);
  CHECK(readouts ==
        std::set<std::vector<int>>{{3, 1, 2}, {2, 3, 1}});

  // Domain violations are rejected.
  CHECK_THROWS_AS(phi_forward(Permutation({2, 1}), 1, from_text("2\n.r\nr+\n")),
                  std::invalid_argument);
  CHECK_THROWS_AS(phi_forward(id2, 1, from_text("2\n.r\nr+\n")), std::invalid_argument);
  CHECK_THROWS_AS(phi_backward(id2, 1, from_text("2\nr-\n|r\n")), std::invalid_argument);
}

TEST_CASE("backward runs keep valid intermediates of the base permutation") {
  for (const auto& pi : all_permutations(4)) {
    for (int alpha = 1; alpha < 4; ++alpha) {
      const MonkTargets targets = monk_targets(pi, alpha);
      if (!targets.precondition) continue;
      for (int l : targets.ls) {
        for (const auto& e : enumerate_bpds(pi.apply_t(alpha, l))) {
          Replay replay{e.grid(), {}, {}};
          phi_backward(pi, alpha, e, record(replay));
          for (size_t i = 0; i + 1 < replay.after.size(); ++i) {
            auto mid = Diagram::try_validate(replay.after[i]);
            REQUIRE(mid.has_value());
            CHECK(mid->perm() == pi);
          }
        }
      }
    }
  }
}

TEST_CASE("phi bijectivity, bookkeeping and round-trips on S_3 and S_4") {
  for (int n = 2; n <= 4; ++n) {
    PermTable table(n);
    for (const auto& pi : all_permutations(n))
      for (int alpha = 1; alpha < n; ++alpha) {
        if (!monk_targets(pi, alpha).precondition) continue;
        const CaseCheckResult r = check_phi_case(table, pi, alpha);
        for (const auto& f : r.failures)
          MESSAGE("pi=", f.pi, " alpha=", f.alpha, " kind=", f.kind, " ", f.lhs);
        CHECK(r.failures.empty());
        CHECK(r.max_steps <= n * n);
      }
  }
}

TEST_CASE("cardinality identity from the bijection") {
  // |BPD(pi)| + sum_k |BPD(pi t_{k,alpha})| = sum_l |BPD(pi t_{alpha,l})|.
  PermTable table(4);
  for (const auto& pi : all_permutations(4))
    for (int alpha = 1; alpha < 4; ++alpha) {
      const MonkTargets t = monk_targets(pi, alpha);
      if (!t.precondition) continue;
      size_t lhs = table.diagrams(pi).size();
      for (int k : t.ks) lhs += table.diagrams(pi.apply_t(k, alpha)).size();
      size_t rhs = 0;
      for (int l : t.ls) rhs += table.diagrams(pi.apply_t(alpha, l)).size();
      CHECK(lhs == rhs);
    }
}
