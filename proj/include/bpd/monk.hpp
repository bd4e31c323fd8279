#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bpd/grid.hpp"
#include "bpd/perm.hpp"

namespace bpd {

struct TraceStep {
  enum class Kind { Droop, Undroop, Swap, FinalizeCross, FinalizeShrink };
  Kind kind;
  Pos from;       // droop/undroop start, swap bump position, finalize position
  Pos to;         // droop/undroop landing, swap cross position
  int row = 0;    // FinalizeShrink only

  std::string to_string() const;
};

using Trace = std::vector<TraceStep>;

// Invoked after every primitive step with the grid in its new state.
using StepObserver = std::function<void(const TraceStep&, const TileGrid&)>;

struct DroopResult {
  Diagram diagram;
  Pos landing;
};

// Lemma-style minimal droop: relocates the r-shaped turn of the pipe at
// (i,j) to the nearest admissible tile southeast, possibly creating a bump.
// The readout permutation is unchanged.
DroopResult min_droop(const Diagram& d, Pos at);

// Exact inverse move: relocates the j-shaped turn at (i,j) to the nearest
// admissible tile northwest.
DroopResult min_undroop(const Diagram& d, Pos at);

// Exchanges the bump of an almost diagram with the existing cross of the two
// pipes meeting there. Corner ownership flips between r- and j-shaped.
Diagram cross_bump_swap(const Diagram& d, Pos cross_pos);

struct InsertResult {
  Diagram diagram;  // a BPD of pi t_{x,y}
  int x = 0, y = 0;
  Trace trace;
};

// Inserts a blank at an r-tile or resolves a bump, drooping southeast until
// the moving pipe bumps into one it does not cross; that bump becomes a
// cross. Requires the r-shaped turn's pipe p = pi(x) to admit some y > x
// with pi t_{x,y} covering pi.
InsertResult resolve_at_r(const Diagram& d, Pos at, const StepObserver& obs = {});

enum class MonkKind { CoverUp, CoverDown, Shrunk };

struct MonkOutcome {
  MonkKind kind;
  int index = 0;  // l for CoverUp, k for CoverDown
  Diagram diagram;
  Trace trace;
};

// Opposite direction: undroops northwest from a j-tile or bump. Ends either
// in a cover-down cross (diagram of pi t_{y,x}, y < x) or by consuming a
// blank on the exit row of the moving pipe (Shrunk).
MonkOutcome resolve_at_j(const Diagram& d, Pos at, const StepObserver& obs = {});

// The Monk bijection. Inputs with readout pi gain a blank on row alpha;
// inputs with readout pi t_{k,alpha} (k < alpha, a cover) keep all row blank
// counts. The result is a BPD of pi t_{alpha,l} for some l > alpha.
MonkOutcome phi_forward(const Permutation& pi, int alpha, const Diagram& d,
                        const StepObserver& obs = {});

// Inverse: takes a BPD of pi t_{alpha,l} and returns either CoverDown(k)
// with a BPD of pi t_{k,alpha} or Shrunk with a BPD of pi having one fewer
// blank on row alpha.
MonkOutcome phi_backward(const Permutation& pi, int alpha, const Diagram& d,
                         const StepObserver& obs = {});

}  // namespace bpd
