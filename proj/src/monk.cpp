#include "bpd/monk.hpp"

#include <stdexcept>

namespace bpd {

namespace {

struct Frame {
  int a = 0, b = 0;
};

bool cover_sorted(const Permutation& pi, int x, int y) {
  return x < y ? pi.is_cover_t(x, y) : pi.is_cover_t(y, x);
}

void require_no_bump(const TileGrid& g, int r, int c, const char* ctx) {
  if (g.at(r, c) == Tile::Bump)
    throw std::invalid_argument(std::string(ctx) + ": bump tile inside the move frame at " +
                                to_string({r, c}));
}

// Finds the minimal droop frame at (i,j): a and b are the distances to the
// first non-cross tile south and east. Verifies the tile classification the
// rewrite relies on.
Frame droop_frame(const TileGrid& g, Pos at) {
  const int n = g.n, i = at.row, j = at.col;
  if (g.at(i, j) != Tile::RTile && g.at(i, j) != Tile::Bump)
    throw std::invalid_argument("droop: no r-shaped turn at " + to_string(at));
  Frame f{1, 1};
  while (i + f.a <= n && g.at(i + f.a, j) == Tile::Cross) ++f.a;
  if (i + f.a > n)
    throw std::invalid_argument("droop: no droop target south of " + to_string(at));
  while (j + f.b <= n && g.at(i, j + f.b) == Tile::Cross) ++f.b;
  if (j + f.b > n)
    throw std::invalid_argument("droop: no droop target east of " + to_string(at));

  const Tile ts = g.at(i + f.a, j), te = g.at(i, j + f.b), tl = g.at(i + f.a, j + f.b);
  if (ts != Tile::Vertical && ts != Tile::JTile)
    throw std::logic_error("droop frame: tile below must be vertical or j at " +
                           to_string({i + f.a, j}));
  if (te != Tile::Horizontal && te != Tile::JTile)
    throw std::logic_error("droop frame: tile east must be horizontal or j at " +
                           to_string({i, j + f.b}));
  if (tl != Tile::Blank && tl != Tile::RTile)
    throw std::logic_error("droop frame: landing must be blank or r at " +
                           to_string({i + f.a, j + f.b}));
  for (int k = 1; k < f.a; ++k) {
    if (g.at(i + k, j + f.b) != Tile::Horizontal)
      throw std::logic_error("droop frame: expected horizontal at " + to_string({i + k, j + f.b}));
    for (int m = 1; m < f.b; ++m)
      if (g.at(i + k, j + m) != Tile::Cross)
        throw std::logic_error("droop frame: interior must be crosses at " +
                               to_string({i + k, j + m}));
  }
  for (int m = 1; m < f.b; ++m)
    if (g.at(i + f.a, j + m) != Tile::Vertical)
      throw std::logic_error("droop frame: expected vertical at " + to_string({i + f.a, j + m}));
  for (int k = 0; k <= f.a; ++k)
    for (int m = 0; m <= f.b; ++m)
      if (k + m > 0) require_no_bump(g, i + k, j + m, "droop");
  return f;
}

Pos apply_droop(TileGrid& g, Pos at, Frame f) {
  const int i = at.row, j = at.col;
  const Tile t0 = g.at(i, j), ts = g.at(i + f.a, j), te = g.at(i, j + f.b),
             tl = g.at(i + f.a, j + f.b);
  g.at(i, j) = (t0 == Tile::RTile) ? Tile::Blank : Tile::JTile;
  for (int k = 1; k < f.a; ++k) g.at(i + k, j) = Tile::Horizontal;
  g.at(i + f.a, j) = (ts == Tile::Vertical) ? Tile::RTile : Tile::Horizontal;
  for (int m = 1; m < f.b; ++m) g.at(i + f.a, j + m) = Tile::Cross;
  g.at(i + f.a, j + f.b) = (tl == Tile::Blank) ? Tile::JTile : Tile::Bump;
  for (int k = 1; k < f.a; ++k) g.at(i + k, j + f.b) = Tile::Cross;
  g.at(i, j + f.b) = (te == Tile::Horizontal) ? Tile::RTile : Tile::Vertical;
  for (int m = 1; m < f.b; ++m) g.at(i, j + m) = Tile::Vertical;
  return {i + f.a, j + f.b};
}

Frame undroop_frame(const TileGrid& g, Pos at) {
  const int i = at.row, j = at.col;
  if (g.at(i, j) != Tile::JTile && g.at(i, j) != Tile::Bump)
    throw std::invalid_argument("undroop: no j-shaped turn at " + to_string(at));
  Frame f{1, 1};
  while (i - f.a >= 1 && g.at(i - f.a, j) == Tile::Cross) ++f.a;
  if (i - f.a < 1) throw std::logic_error("undroop: crosses reach the north border");
  while (j - f.b >= 1 && g.at(i, j - f.b) == Tile::Cross) ++f.b;
  if (j - f.b < 1) throw std::logic_error("undroop: crosses reach the west border");

  const Tile tn = g.at(i - f.a, j), tw = g.at(i, j - f.b), tl = g.at(i - f.a, j - f.b);
  if (tn != Tile::RTile && tn != Tile::Vertical)
    throw std::logic_error("undroop frame: tile above must be r or vertical at " +
                           to_string({i - f.a, j}));
  if (tw != Tile::RTile && tw != Tile::Horizontal)
    throw std::logic_error("undroop frame: tile west must be r or horizontal at " +
                           to_string({i, j - f.b}));
  if (tl != Tile::Blank && tl != Tile::JTile)
    throw std::logic_error("undroop frame: landing must be blank or j at " +
                           to_string({i - f.a, j - f.b}));
  for (int k = 1; k < f.a; ++k) {
    if (g.at(i - k, j - f.b) != Tile::Horizontal)
      throw std::logic_error("undroop frame: expected horizontal at " +
                             to_string({i - k, j - f.b}));
    for (int m = 1; m < f.b; ++m)
      if (g.at(i - k, j - m) != Tile::Cross)
        throw std::logic_error("undroop frame: interior must be crosses at " +
                               to_string({i - k, j - m}));
  }
  for (int m = 1; m < f.b; ++m)
    if (g.at(i - f.a, j - m) != Tile::Vertical)
      throw std::logic_error("undroop frame: expected vertical at " + to_string({i - f.a, j - m}));
  for (int k = 0; k <= f.a; ++k)
    for (int m = 0; m <= f.b; ++m)
      if (k + m > 0) require_no_bump(g, i - k, j - m, "undroop");
  return f;
}

Pos apply_undroop(TileGrid& g, Pos at, Frame f) {
  const int i = at.row, j = at.col;
  const Tile t0 = g.at(i, j), tn = g.at(i - f.a, j), tw = g.at(i, j - f.b),
             tl = g.at(i - f.a, j - f.b);
  g.at(i, j) = (t0 == Tile::JTile) ? Tile::Blank : Tile::RTile;
  for (int k = 1; k < f.a; ++k) g.at(i - k, j) = Tile::Horizontal;
  g.at(i - f.a, j) = (tn == Tile::RTile) ? Tile::Horizontal : Tile::JTile;
  for (int m = 1; m < f.b; ++m) g.at(i - f.a, j - m) = Tile::Cross;
  g.at(i - f.a, j - f.b) = (tl == Tile::Blank) ? Tile::RTile : Tile::Bump;
  for (int k = 1; k < f.a; ++k) g.at(i - k, j - f.b) = Tile::Cross;
  g.at(i, j - f.b) = (tw == Tile::RTile) ? Tile::Vertical : Tile::JTile;
  for (int m = 1; m < f.b; ++m) g.at(i, j - m) = Tile::Vertical;
  return {i - f.a, j - f.b};
}

// The algorithms require the input to lie in BPD'_{i,j}: an honest BPD with
// the named tile at (i,j), or an almost BPD whose unique bump sits there.
void require_bpd_prime(const Diagram& d, Pos at, const char* ctx) {
  if (!d.is_bpd() && *d.bump() != at)
    throw std::invalid_argument(std::string(ctx) + ": the bump must be at the move position");
}

int exists_upward_cover(const Permutation& pi, int x) {
  for (int y = x + 1; y <= pi.n(); ++y)
    if (pi.is_cover_t(x, y)) return y;
  return 0;
}

}  // namespace

std::string TraceStep::to_string() const {
  switch (kind) {
    case Kind::Droop: return "droop " + bpd::to_string(from) + "->" + bpd::to_string(to);
    case Kind::Undroop: return "undroop " + bpd::to_string(from) + "->" + bpd::to_string(to);
    case Kind::Swap:
      return "swap bump" + bpd::to_string(from) + "<->cross" + bpd::to_string(to);
    case Kind::FinalizeCross: return "finalize cross" + bpd::to_string(from);
    case Kind::FinalizeShrink: return "finalize shrink row " + std::to_string(row);
  }
  return {};
}

DroopResult min_droop(const Diagram& d, Pos at) {
  require_bpd_prime(d, at, "min_droop");
  const int p = grid_owner(d.grid(), at, Seg::SE);
  if (p == 0) throw std::invalid_argument("min_droop: no r-shaped turn at " + to_string(at));
  const int x = d.perm().inverse()(p);
  if (!exists_upward_cover(d.perm(), x))
    throw std::invalid_argument("min_droop: pipe admits no upward cover transposition");
  TileGrid g = d.grid();
  Frame f = droop_frame(g, at);
  Pos land = apply_droop(g, at, f);
  Diagram out = Diagram::validate(std::move(g));
  if (!(out.perm() == d.perm())) throw std::logic_error("min_droop: readout changed");
  return {std::move(out), land};
}

DroopResult min_undroop(const Diagram& d, Pos at) {
  require_bpd_prime(d, at, "min_undroop");
  if (grid_owner(d.grid(), at, Seg::WN) == 0)
    throw std::invalid_argument("min_undroop: no j-shaped turn at " + to_string(at));
  TileGrid g = d.grid();
  Frame f = undroop_frame(g, at);
  Pos land = apply_undroop(g, at, f);
  Diagram out = Diagram::validate(std::move(g));
  if (!(out.perm() == d.perm())) throw std::logic_error("min_undroop: readout changed");
  return {std::move(out), land};
}

Diagram cross_bump_swap(const Diagram& d, Pos cross_pos) {
  if (d.is_bpd()) throw std::invalid_argument("cross_bump_swap: diagram has no bump");
  const Pos bump = *d.bump();
  const int pse = grid_owner(d.grid(), bump, Seg::SE);
  const int pwn = grid_owner(d.grid(), bump, Seg::WN);
  auto c = d.find_cross(pse, pwn);
  if (!c) throw std::invalid_argument("cross_bump_swap: the bump pipes do not cross");
  if (*c != cross_pos)
    throw std::invalid_argument("cross_bump_swap: " + to_string(cross_pos) +
                                " is not the cross of the bump pipes");
  TileGrid g = d.grid();
  g.at(bump.row, bump.col) = Tile::Cross;
  g.at(cross_pos.row, cross_pos.col) = Tile::Bump;
  Diagram out = Diagram::validate(std::move(g));
  if (!(out.perm() == d.perm())) throw std::logic_error("cross_bump_swap: readout changed");
  return out;
}

InsertResult resolve_at_r(const Diagram& d, Pos at, const StepObserver& obs) {
  require_bpd_prime(d, at, "resolve_at_r");
  const Permutation& pi = d.perm();
  const Permutation inv = pi.inverse();
  const int n = d.n();
  const int p = grid_owner(d.grid(), at, Seg::SE);
  if (p == 0) throw std::invalid_argument("resolve_at_r: no r-shaped turn at " + to_string(at));
  const int x = inv(p);
  if (!exists_upward_cover(pi, x))
    throw std::invalid_argument("resolve_at_r: pipe admits no upward cover transposition");

  TileGrid g = d.grid();
  Trace trace;
  long prev_area = grid_pipe_area(g, p);
  int steps = 0;
  Pos cur = at;
  for (;;) {
    if (++steps > n * n) throw std::logic_error("resolve_at_r: step bound n^2 exceeded");
    if (grid_owner(g, cur, Seg::SE) != p)
      throw std::logic_error("resolve_at_r: moving pipe changed identity");
    const Frame f = droop_frame(g, cur);
    const Pos land{cur.row + f.a, cur.col + f.b};
    const bool onto_blank = g.at(land.row, land.col) == Tile::Blank;
    apply_droop(g, cur, f);
    trace.push_back({TraceStep::Kind::Droop, cur, land});
    if (obs) obs(trace.back(), g);
    long area = grid_pipe_area(g, p);
    if (area >= prev_area)
      throw std::logic_error("resolve_at_r: pipe area did not decrease at a droop");
    prev_area = area;

    if (onto_blank) {
      auto next = pipe_turn_in_row(trace_pipe(g, p), land.row, Seg::SE);
      if (!next) throw std::logic_error("resolve_at_r: no r-turn of the pipe on the landing row");
      cur = *next;
      continue;
    }
    // Landed on another pipe's r-tile: the tile is now a bump, the moving
    // pipe holds its j-shaped corner.
    const int q = grid_owner(g, land, Seg::SE);
    if (q == 0 || grid_owner(g, land, Seg::WN) != p)
      throw std::logic_error("resolve_at_r: unexpected bump ownership");
    const int y = inv(q);
    if (cover_sorted(pi, x, y)) {
      if (grid_cross_of(g, p, q))
        throw std::logic_error("resolve_at_r: cover pipes must not cross");
      if (y <= x) throw std::logic_error("resolve_at_r: terminal transposition must go up");
      g.at(land.row, land.col) = Tile::Cross;
      trace.push_back({TraceStep::Kind::FinalizeCross, land, land});
      if (obs) obs(trace.back(), g);
      Diagram out = Diagram::validate(std::move(g));
      if (!(out.perm() == pi.apply_t(x, y)))
        throw std::logic_error("resolve_at_r: output readout is not pi t_{x,y}");
      return {std::move(out), x, y, std::move(trace)};
    }
    auto c = grid_cross_of(g, p, q);
    if (!c) throw std::logic_error("resolve_at_r: non-cover pipes must cross");
    g.at(land.row, land.col) = Tile::Cross;
    g.at(c->row, c->col) = Tile::Bump;
    trace.push_back({TraceStep::Kind::Swap, land, *c});
    if (obs) obs(trace.back(), g);
    area = grid_pipe_area(g, p);
    if (area >= prev_area)
      throw std::logic_error("resolve_at_r: pipe area did not decrease at a swap");
    prev_area = area;
    cur = *c;
  }
}

MonkOutcome resolve_at_j(const Diagram& d, Pos at, const StepObserver& obs) {
  require_bpd_prime(d, at, "resolve_at_j");
  const Permutation& pi = d.perm();
  const Permutation inv = pi.inverse();
  const int n = d.n();
  const int p = grid_owner(d.grid(), at, Seg::WN);
  if (p == 0) throw std::invalid_argument("resolve_at_j: no j-shaped turn at " + to_string(at));
  const int x = inv(p);

  TileGrid g = d.grid();
  Trace trace;
  long prev_area = grid_pipe_area(g, p);
  int steps = 0;
  Pos cur = at;
  for (;;) {
    if (++steps > n * n) throw std::logic_error("resolve_at_j: step bound n^2 exceeded");
    if (grid_owner(g, cur, Seg::WN) != p)
      throw std::logic_error("resolve_at_j: moving pipe changed identity");
    const Frame f = undroop_frame(g, cur);
    const Pos land{cur.row - f.a, cur.col - f.b};
    const bool onto_blank = g.at(land.row, land.col) == Tile::Blank;
    apply_undroop(g, cur, f);
    trace.push_back({TraceStep::Kind::Undroop, cur, land});
    if (obs) obs(trace.back(), g);
    long area = grid_pipe_area(g, p);
    if (area <= prev_area)
      throw std::logic_error("resolve_at_j: pipe area did not increase at an undroop");
    prev_area = area;

    if (onto_blank) {
      auto jt = pipe_turn_in_row(trace_pipe(g, p), land.row, Seg::WN);
      if (!jt) {
        // The pipe only turns once on this row, so this is its exit row and
        // the consumed blank shrinks it.
        if (land.row != x)
          throw std::logic_error("resolve_at_j: shrink row is not the pipe's exit row");
        trace.push_back({TraceStep::Kind::FinalizeShrink, land, land, land.row});
        if (obs) obs(trace.back(), g);
        Diagram out = Diagram::validate(std::move(g));
        if (!(out.perm() == pi)) throw std::logic_error("resolve_at_j: shrunk readout changed");
        return {MonkKind::Shrunk, 0, std::move(out), std::move(trace)};
      }
      if (jt->col <= land.col)
        throw std::logic_error("resolve_at_j: j-turn must lie strictly east of the landing");
      cur = *jt;
      continue;
    }
    // Landed on another pipe's j-tile: now a bump with the moving pipe on
    // the r-shaped corner.
    const int q = grid_owner(g, land, Seg::WN);
    if (q == 0 || grid_owner(g, land, Seg::SE) != p)
      throw std::logic_error("resolve_at_j: unexpected bump ownership");
    const int y = inv(q);
    if (cover_sorted(pi, x, y)) {
      if (grid_cross_of(g, p, q))
        throw std::logic_error("resolve_at_j: cover pipes must not cross");
      if (y >= x) throw std::logic_error("resolve_at_j: terminal transposition must go down");
      g.at(land.row, land.col) = Tile::Cross;
      trace.push_back({TraceStep::Kind::FinalizeCross, land, land});
      if (obs) obs(trace.back(), g);
      Diagram out = Diagram::validate(std::move(g));
      if (!(out.perm() == pi.apply_t(y, x)))
        throw std::logic_error("resolve_at_j: output readout is not pi t_{y,x}");
      return {MonkKind::CoverDown, y, std::move(out), std::move(trace)};
    }
    auto c = grid_cross_of(g, p, q);
    if (!c) throw std::logic_error("resolve_at_j: non-cover pipes must cross");
    g.at(land.row, land.col) = Tile::Cross;
    g.at(c->row, c->col) = Tile::Bump;
    trace.push_back({TraceStep::Kind::Swap, land, *c});
    if (obs) obs(trace.back(), g);
    area = grid_pipe_area(g, p);
    if (area <= prev_area)
      throw std::logic_error("resolve_at_j: pipe area did not increase at a swap");
    prev_area = area;
    cur = *c;
  }
}

MonkOutcome phi_forward(const Permutation& pi, int alpha, const Diagram& d,
                        const StepObserver& obs) {
  const MonkTargets targets = monk_targets(pi, alpha);
  if (!targets.precondition)
    throw std::invalid_argument("phi_forward: no l > alpha with pi t_{alpha,l} covering pi");
  if (!d.is_bpd()) throw std::invalid_argument("phi_forward: input must be bumpless");
  const Permutation& sigma = d.perm();

  if (sigma == pi) {
    const int p = pi(alpha);
    auto start = d.r_turn_in_row(p, alpha);
    if (!start) throw std::logic_error("phi_forward: pipe has no r-turn on its exit row");
    InsertResult res = resolve_at_r(d, *start, obs);
    if (res.x != alpha) throw std::logic_error("phi_forward: resolution moved the wrong pipe");
    return {MonkKind::CoverUp, res.y, std::move(res.diagram), std::move(res.trace)};
  }

  for (int k : targets.ks) {
    if (!(sigma == pi.apply_t(k, alpha))) continue;
    const int p = sigma(k);      // = pi(alpha)
    const int q = sigma(alpha);  // = pi(k)
    auto c = d.find_cross(p, q);
    if (!c) throw std::logic_error("phi_forward: cover pipes do not cross");
    TileGrid g = d.grid();
    g.at(c->row, c->col) = Tile::Bump;
    Diagram uncrossed = Diagram::validate(std::move(g));
    if (!(uncrossed.perm() == pi)) throw std::logic_error("phi_forward: uncross readout mismatch");
    if (grid_owner(uncrossed.grid(), *c, Seg::SE) != p)
      throw std::logic_error("phi_forward: r-corner of the opened bump is not pi(alpha)");
    InsertResult res = resolve_at_r(uncrossed, *c, obs);
    if (res.x != alpha) throw std::logic_error("phi_forward: resolution moved the wrong pipe");
    return {MonkKind::CoverUp, res.y, std::move(res.diagram), std::move(res.trace)};
  }
  throw std::invalid_argument(
      "phi_forward: readout is neither pi nor a covering pi t_{k,alpha}");
}

MonkOutcome phi_backward(const Permutation& pi, int alpha, const Diagram& d,
                         const StepObserver& obs) {
  const MonkTargets targets = monk_targets(pi, alpha);
  if (!targets.precondition)
    throw std::invalid_argument("phi_backward: no l > alpha with pi t_{alpha,l} covering pi");
  if (!d.is_bpd()) throw std::invalid_argument("phi_backward: input must be bumpless");
  const Permutation& tau = d.perm();

  for (int l : targets.ls) {
    if (!(tau == pi.apply_t(alpha, l))) continue;
    const int q = tau(alpha);  // = pi(l)
    const int p = tau(l);      // = pi(alpha)
    auto c = d.find_cross(p, q);
    if (!c) throw std::logic_error("phi_backward: cover pipes do not cross");
    TileGrid g = d.grid();
    g.at(c->row, c->col) = Tile::Bump;
    Diagram uncrossed = Diagram::validate(std::move(g));
    if (!(uncrossed.perm() == pi)) throw std::logic_error("phi_backward: uncross readout mismatch");
    if (grid_owner(uncrossed.grid(), *c, Seg::WN) != p)
      throw std::logic_error("phi_backward: j-corner of the opened bump is not pi(alpha)");
    return resolve_at_j(uncrossed, *c, obs);
  }
  throw std::invalid_argument("phi_backward: readout is not a covering pi t_{alpha,l}");
}

}  // namespace bpd
