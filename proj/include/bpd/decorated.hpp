#pragma once

#include <map>
#include <optional>

#include "bpd/grid.hpp"
#include "bpd/monk.hpp"
#include "bpd/poly.hpp"

namespace bpd {

// A diagram with every blank tile labeled x or -y. The base may be an
// almost diagram while an algorithm is running.
struct DecoratedBpd {
  Diagram base;
  std::map<Pos, Label> labels;

  // Checks that the labeling is total on the blanks and has no extras.
  static DecoratedBpd make(Diagram base, std::map<Pos, Label> labels);

  bool operator==(const DecoratedBpd& o) const {
    return base.grid() == o.base.grid() && labels == o.labels;
  }
};

std::string render(const DecoratedBpd& d);

// The signed monomial of a decorated diagram: product of x_i over X-labeled
// blanks times product of (-y_j) over NegY-labeled blanks, as a one-term
// polynomial.
Poly mon(const DecoratedBpd& d);

struct DecoratedInsertResult {
  DecoratedBpd diagram;
  int x = 0, y = 0;
  Trace trace;
};

// Label-threaded blank insertion: captures the label of each consumed blank
// and deposits the in-hand label at each vacated r-tile; an X capture sends
// the walk along the landing row, a NegY capture along the landing column.
// u must be supplied exactly when the tile at `at` is an r-tile.
DecoratedInsertResult resolve_at_r_dec(const DecoratedBpd& d, Pos at, std::optional<Label> u,
                                       const StepObserver& obs = {});

struct DecoratedMonkOutcome {
  MonkKind kind;  // CoverDown or Shrunk
  int index = 0;  // k for CoverDown
  DecoratedBpd diagram;
  std::optional<Label> v;  // the consumed label, set on Shrunk
  Trace trace;
};

// Mirror of resolve_at_r_dec. On Shrunk termination the label of the final
// consumed blank is returned: an X walk ends on the pipe's exit row, a NegY
// walk on its south-entry column. u must be supplied exactly when the tile
// at `at` is a j-tile.
DecoratedMonkOutcome resolve_at_j_dec(const DecoratedBpd& d, Pos at, std::optional<Label> u,
                                      const StepObserver& obs = {});

struct PhiTildeResult {
  DecoratedBpd diagram;  // decorated BPD of pi t_{alpha,l}
  int l = 0;
  Trace trace;
};

// Decorated Monk bijection, labeled-pair branch: readout(d) must be pi.
// mon(out) = x_alpha * mon(d) when u is X, and -y_{pi(alpha)} * mon(d) when
// u is NegY.
PhiTildeResult phi_tilde_forward(const Permutation& pi, int alpha, Label u,
                                 const DecoratedBpd& d, const StepObserver& obs = {});

// Bare branch: readout(d) must be pi t_{k,alpha} for a cover; mon is
// preserved.
PhiTildeResult phi_tilde_forward_bare(const Permutation& pi, int alpha, const DecoratedBpd& d,
                                      const StepObserver& obs = {});

// Inverse of both branches: Shrunk reconstructs the labeled-pair preimage
// (v, diagram), CoverDown the bare preimage.
DecoratedMonkOutcome phi_tilde_backward(const Permutation& pi, int alpha, const DecoratedBpd& d,
                                        const StepObserver& obs = {});

}  // namespace bpd
