#include "bpd/decorated.hpp"

#include <stdexcept>

namespace bpd {

namespace {

bool cover_sorted(const Permutation& pi, int x, int y) {
  return x < y ? pi.is_cover_t(x, y) : pi.is_cover_t(y, x);
}

void require_bpd_prime(const Diagram& d, Pos at, const char* ctx) {
  if (!d.is_bpd() && *d.bump() != at)
    throw std::invalid_argument(std::string(ctx) + ": the bump must be at the move position");
}

Label take_label(std::map<Pos, Label>& labels, Pos at, const char* ctx) {
  auto it = labels.find(at);
  if (it == labels.end())
    throw std::logic_error(std::string(ctx) + ": blank at " + to_string(at) + " carries no label");
  Label v = it->second;
  labels.erase(it);
  return v;
}

}  // namespace

DecoratedBpd DecoratedBpd::make(Diagram base, std::map<Pos, Label> labels) {
  auto blanks = base.blanks();
  if (labels.size() != blanks.size())
    throw std::invalid_argument("decorated diagram: labeling is not total on the blanks");
  for (Pos b : blanks)
    if (!labels.count(b))
      throw std::invalid_argument("decorated diagram: blank at " + to_string(b) + " unlabeled");
  return DecoratedBpd{std::move(base), std::move(labels)};
}

std::string render(const DecoratedBpd& d) {
  const TileGrid& g = d.base.grid();
  std::string out = std::to_string(g.n);
  out += '\n';
  for (int r = 1; r <= g.n; ++r) {
    for (int c = 1; c <= g.n; ++c) {
      if (g.at(r, c) == Tile::Blank)
        out += d.labels.at({r, c}) == Label::X ? 'x' : 'y';
      else
        out += tile_char(g.at(r, c));
    }
    out += '\n';
  }
  return out;
}

Poly mon(const DecoratedBpd& d) {
  if (!d.base.is_bpd()) throw std::invalid_argument("mon: base must be bumpless");
  const int n = d.base.n();
  Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0)};
  int neg = 0;
  for (const auto& [pos, label] : d.labels) {
    if (label == Label::X) {
      ++m.xe[pos.row - 1];
    } else {
      ++m.ye[pos.col - 1];
      ++neg;
    }
  }
  Poly out(n);
  out.add_term(std::move(m), (neg % 2 == 0) ? Int(1) : Int(-1));
  return out;
}

DecoratedInsertResult resolve_at_r_dec(const DecoratedBpd& d, Pos at, std::optional<Label> u,
                                       const StepObserver& obs) {
  require_bpd_prime(d.base, at, "resolve_at_r_dec");
  DecoratedBpd::make(d.base, d.labels);  // revalidate totality
  const Permutation& pi = d.base.perm();
  const Permutation inv = pi.inverse();
  const int n = d.base.n();
  const int p = grid_owner(d.base.grid(), at, Seg::SE);
  if (p == 0)
    throw std::invalid_argument("resolve_at_r_dec: no r-shaped turn at " + to_string(at));
  const int x = inv(p);
  {
    bool ok = false;
    for (int yy = x + 1; yy <= n && !ok; ++yy) ok = pi.is_cover_t(x, yy);
    if (!ok)
      throw std::invalid_argument("resolve_at_r_dec: pipe admits no upward cover transposition");
  }
  if (u.has_value() != (d.base.at(at.row, at.col) == Tile::RTile))
    throw std::invalid_argument(
        "resolve_at_r_dec: label u must be supplied exactly for an r-tile start");

  TileGrid g = d.base.grid();
  std::map<Pos, Label> labels = d.labels;
  Trace trace;
  long prev_area = grid_pipe_area(g, p);
  int steps = 0;
  Pos cur = at;
  bool has_hand = u.has_value();
  Label hand = u.value_or(Label::X);
  for (;;) {
    if (++steps > n * n) throw std::logic_error("resolve_at_r_dec: step bound n^2 exceeded");
    if (grid_owner(g, cur, Seg::SE) != p)
      throw std::logic_error("resolve_at_r_dec: moving pipe changed identity");
    const bool start_is_r = g.at(cur.row, cur.col) == Tile::RTile;
    if (has_hand != start_is_r)
      throw std::logic_error("resolve_at_r_dec: label in hand out of sync with the start tile");

    // Reach the landing through a throwaway droop probe to learn its
    // position before rewriting.
    TileGrid probe = g;
    DroopResult probed = min_droop(Diagram::validate(std::move(probe)), cur);
    const Pos land = probed.landing;
    std::optional<Label> v;
    const bool onto_blank = g.at(land.row, land.col) == Tile::Blank;
    if (onto_blank) v = take_label(labels, land, "resolve_at_r_dec");

    g = probed.diagram.grid();
    trace.push_back({TraceStep::Kind::Droop, cur, land});
    if (obs) obs(trace.back(), g);
    if (start_is_r) {
      labels[cur] = hand;
      has_hand = false;
    }
    long area = grid_pipe_area(g, p);
    if (area >= prev_area)
      throw std::logic_error("resolve_at_r_dec: pipe area did not decrease at a droop");
    prev_area = area;

    if (onto_blank) {
      auto path = trace_pipe(g, p);
      auto next = (*v == Label::X) ? pipe_turn_in_row(path, land.row, Seg::SE)
                                   : pipe_turn_in_col(path, land.col, Seg::SE);
      if (!next)
        throw std::logic_error("resolve_at_r_dec: no r-turn of the pipe on the landing line");
      cur = *next;
      hand = *v;
      has_hand = true;
      continue;
    }
    const int q = grid_owner(g, land, Seg::SE);
    if (q == 0 || grid_owner(g, land, Seg::WN) != p)
      throw std::logic_error("resolve_at_r_dec: unexpected bump ownership");
    const int y = inv(q);
    if (cover_sorted(pi, x, y)) {
      if (y <= x) throw std::logic_error("resolve_at_r_dec: terminal transposition must go up");
      g.at(land.row, land.col) = Tile::Cross;
      trace.push_back({TraceStep::Kind::FinalizeCross, land, land});
      if (obs) obs(trace.back(), g);
      DecoratedBpd out = DecoratedBpd::make(Diagram::validate(std::move(g)), std::move(labels));
      if (!(out.base.perm() == pi.apply_t(x, y)))
        throw std::logic_error("resolve_at_r_dec: output readout is not pi t_{x,y}");
      return {std::move(out), x, y, std::move(trace)};
    }
    auto c = grid_cross_of(g, p, q);
    if (!c) throw std::logic_error("resolve_at_r_dec: non-cover pipes must cross");
    g.at(land.row, land.col) = Tile::Cross;
    g.at(c->row, c->col) = Tile::Bump;
    trace.push_back({TraceStep::Kind::Swap, land, *c});
    if (obs) obs(trace.back(), g);
    area = grid_pipe_area(g, p);
    if (area >= prev_area)
      throw std::logic_error("resolve_at_r_dec: pipe area did not decrease at a swap");
    prev_area = area;
    cur = *c;
  }
}

DecoratedMonkOutcome resolve_at_j_dec(const DecoratedBpd& d, Pos at, std::optional<Label> u,
                                      const StepObserver& obs) {
  require_bpd_prime(d.base, at, "resolve_at_j_dec");
  DecoratedBpd::make(d.base, d.labels);  // revalidate totality
  const Permutation& pi = d.base.perm();
  const Permutation inv = pi.inverse();
  const int n = d.base.n();
  const int p = grid_owner(d.base.grid(), at, Seg::WN);
  if (p == 0)
    throw std::invalid_argument("resolve_at_j_dec: no j-shaped turn at " + to_string(at));
  const int x = inv(p);
  if (u.has_value() != (d.base.at(at.row, at.col) == Tile::JTile))
    throw std::invalid_argument(
        "resolve_at_j_dec: label u must be supplied exactly for a j-tile start");

  TileGrid g = d.base.grid();
  std::map<Pos, Label> labels = d.labels;
  Trace trace;
  long prev_area = grid_pipe_area(g, p);
  int steps = 0;
  Pos cur = at;
  bool has_hand = u.has_value();
  Label hand = u.value_or(Label::X);
  for (;;) {
    if (++steps > n * n) throw std::logic_error("resolve_at_j_dec: step bound n^2 exceeded");
    if (grid_owner(g, cur, Seg::WN) != p)
      throw std::logic_error("resolve_at_j_dec: moving pipe changed identity");
    const bool start_is_j = g.at(cur.row, cur.col) == Tile::JTile;
    if (has_hand != start_is_j)
      throw std::logic_error("resolve_at_j_dec: label in hand out of sync with the start tile");

    TileGrid probe = g;
    DroopResult probed = min_undroop(Diagram::validate(std::move(probe)), cur);
    const Pos land = probed.landing;
    std::optional<Label> v;
    const bool onto_blank = g.at(land.row, land.col) == Tile::Blank;
    if (onto_blank) v = take_label(labels, land, "resolve_at_j_dec");

    g = probed.diagram.grid();
    trace.push_back({TraceStep::Kind::Undroop, cur, land});
    if (obs) obs(trace.back(), g);
    if (start_is_j) {
      labels[cur] = hand;
      has_hand = false;
    }
    long area = grid_pipe_area(g, p);
    if (area <= prev_area)
      throw std::logic_error("resolve_at_j_dec: pipe area did not increase at an undroop");
    prev_area = area;

    if (onto_blank) {
      auto path = trace_pipe(g, p);
      if (*v == Label::X) {
        auto jt = pipe_turn_in_row(path, land.row, Seg::WN);
        if (!jt) {
          if (land.row != x)
            throw std::logic_error("resolve_at_j_dec: shrink row is not the pipe's exit row");
          trace.push_back({TraceStep::Kind::FinalizeShrink, land, land, land.row});
          if (obs) obs(trace.back(), g);
          DecoratedBpd out = DecoratedBpd::make(Diagram::validate(std::move(g)), std::move(labels));
          return {MonkKind::Shrunk, 0, std::move(out), v, std::move(trace)};
        }
        cur = *jt;
      } else {
        auto jt = pipe_turn_in_col(path, land.col, Seg::WN);
        if (!jt) {
          // Only one turn on this column, so it is the pipe's south-entry
          // column pi(x).
          if (land.col != p)
            throw std::logic_error(
                "resolve_at_j_dec: shrink column is not the pipe's entry column");
          trace.push_back({TraceStep::Kind::FinalizeShrink, land, land, land.row});
          if (obs) obs(trace.back(), g);
          DecoratedBpd out = DecoratedBpd::make(Diagram::validate(std::move(g)), std::move(labels));
          return {MonkKind::Shrunk, 0, std::move(out), v, std::move(trace)};
        }
        if (jt->row <= land.row)
          throw std::logic_error("resolve_at_j_dec: j-turn must lie strictly south of the landing");
        cur = *jt;
      }
      hand = *v;
      has_hand = true;
      continue;
    }
    const int q = grid_owner(g, land, Seg::WN);
    if (q == 0 || grid_owner(g, land, Seg::SE) != p)
      throw std::logic_error("resolve_at_j_dec: unexpected bump ownership");
    const int y = inv(q);
    if (cover_sorted(pi, x, y)) {
      if (y >= x) throw std::logic_error("resolve_at_j_dec: terminal transposition must go down");
      g.at(land.row, land.col) = Tile::Cross;
      trace.push_back({TraceStep::Kind::FinalizeCross, land, land});
      if (obs) obs(trace.back(), g);
      DecoratedBpd out = DecoratedBpd::make(Diagram::validate(std::move(g)), std::move(labels));
      if (!(out.base.perm() == pi.apply_t(y, x)))
        throw std::logic_error("resolve_at_j_dec: output readout is not pi t_{y,x}");
      return {MonkKind::CoverDown, y, std::move(out), std::nullopt, std::move(trace)};
    }
    auto c = grid_cross_of(g, p, q);
    if (!c) throw std::logic_error("resolve_at_j_dec: non-cover pipes must cross");
    g.at(land.row, land.col) = Tile::Cross;
    g.at(c->row, c->col) = Tile::Bump;
    trace.push_back({TraceStep::Kind::Swap, land, *c});
    if (obs) obs(trace.back(), g);
    area = grid_pipe_area(g, p);
    if (area <= prev_area)
      throw std::logic_error("resolve_at_j_dec: pipe area did not increase at a swap");
    prev_area = area;
    cur = *c;
  }
}

PhiTildeResult phi_tilde_forward(const Permutation& pi, int alpha, Label u,
                                 const DecoratedBpd& d, const StepObserver& obs) {
  const MonkTargets targets = monk_targets(pi, alpha);
  if (!targets.precondition)
    throw std::invalid_argument("phi_tilde_forward: no l > alpha with pi t_{alpha,l} covering pi");
  if (!d.base.is_bpd() || !(d.base.perm() == pi))
    throw std::invalid_argument("phi_tilde_forward: labeled input must be a BPD of pi");
  const int p = pi(alpha);
  // An X insertion starts at the pipe's r-turn on its exit row alpha and
  // deposits x_alpha; a NegY insertion starts at the r-turn on the pipe's
  // south-entry column pi(alpha) and deposits -y_{pi(alpha)}.
  auto start = (u == Label::X) ? d.base.r_turn_in_row(p, alpha) : d.base.r_turn_in_col(p, p);
  if (!start) throw std::logic_error("phi_tilde_forward: missing initial r-turn");
  DecoratedInsertResult res = resolve_at_r_dec(d, *start, u, obs);
  if (res.x != alpha) throw std::logic_error("phi_tilde_forward: resolution moved the wrong pipe");
  return {std::move(res.diagram), res.y, std::move(res.trace)};
}

PhiTildeResult phi_tilde_forward_bare(const Permutation& pi, int alpha, const DecoratedBpd& d,
                                      const StepObserver& obs) {
  const MonkTargets targets = monk_targets(pi, alpha);
  if (!targets.precondition)
    throw std::invalid_argument("phi_tilde_forward: no l > alpha with pi t_{alpha,l} covering pi");
  if (!d.base.is_bpd()) throw std::invalid_argument("phi_tilde_forward: input must be bumpless");
  const Permutation& sigma = d.base.perm();
  for (int k : targets.ks) {
    if (!(sigma == pi.apply_t(k, alpha))) continue;
    const int p = sigma(k), q = sigma(alpha);
    auto c = d.base.find_cross(p, q);
    if (!c) throw std::logic_error("phi_tilde_forward: cover pipes do not cross");
    TileGrid g = d.base.grid();
    g.at(c->row, c->col) = Tile::Bump;
    DecoratedBpd uncrossed = DecoratedBpd::make(Diagram::validate(std::move(g)), d.labels);
    if (!(uncrossed.base.perm() == pi))
      throw std::logic_error("phi_tilde_forward: uncross readout mismatch");
    DecoratedInsertResult res = resolve_at_r_dec(uncrossed, *c, std::nullopt, obs);
    if (res.x != alpha)
      throw std::logic_error("phi_tilde_forward: resolution moved the wrong pipe");
    return {std::move(res.diagram), res.y, std::move(res.trace)};
  }
  throw std::invalid_argument("phi_tilde_forward: readout is not a covering pi t_{k,alpha}");
}

DecoratedMonkOutcome phi_tilde_backward(const Permutation& pi, int alpha, const DecoratedBpd& d,
                                        const StepObserver& obs) {
  const MonkTargets targets = monk_targets(pi, alpha);
  if (!targets.precondition)
    throw std::invalid_argument("phi_tilde_backward: no l > alpha with pi t_{alpha,l} covering pi");
  if (!d.base.is_bpd()) throw std::invalid_argument("phi_tilde_backward: input must be bumpless");
  const Permutation& tau = d.base.perm();
  for (int l : targets.ls) {
    if (!(tau == pi.apply_t(alpha, l))) continue;
    const int q = tau(alpha), p = tau(l);
    auto c = d.base.find_cross(p, q);
    if (!c) throw std::logic_error("phi_tilde_backward: cover pipes do not cross");
    TileGrid g = d.base.grid();
    g.at(c->row, c->col) = Tile::Bump;
    DecoratedBpd uncrossed = DecoratedBpd::make(Diagram::validate(std::move(g)), d.labels);
    if (!(uncrossed.base.perm() == pi))
      throw std::logic_error("phi_tilde_backward: uncross readout mismatch");
    if (grid_owner(uncrossed.base.grid(), *c, Seg::WN) != p)
      throw std::logic_error("phi_tilde_backward: j-corner of the opened bump is not pi(alpha)");
    return resolve_at_j_dec(uncrossed, *c, std::nullopt, obs);
  }
  throw std::invalid_argument("phi_tilde_backward: readout is not a covering pi t_{alpha,l}");
}

}  // namespace bpd
