#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "clarith/bounds.hpp"
#include "clarith/game.hpp"

namespace clarith {

// One running play of a strategy. step() is called once per cycle with the
// adversary moves that landed on that cycle and returns the moves the
// machine makes on it. Sessions must be deterministic: equal observation
// sequences yield equal emissions.
class Session {
 public:
  virtual ~Session() = default;
  virtual std::vector<Move> step(const std::vector<Move>& observed) = 0;
  // Logical space units currently held (meter, not host memory).
  virtual Nat space_units() const { return 0; }
  // False while the session still has internal work to flush; drivers may
  // keep stepping a non-quiescent session on empty input.
  virtual bool quiescent() const { return true; }
};

struct BoundObject {
  enum class Kind { Time, Space };
  Kind kind;
  ExplicitFunction fn;
};

// A step-indexed deterministic interactive machine. `quiescence` bounds the
// number of cycles the machine may still move after its last observation;
// all built-in strategies respond on the observing cycle itself.
struct Strategy {
  std::string name;
  std::function<std::unique_ptr<Session>()> spawn;
  std::optional<BoundObject> declared_bound;
  long quiescence = 1;
  FormulaPtr game;  // the closed game this strategy plays, when known
};

enum class Side { Root, Antecedent, Consequent };

struct ScheduledMove {
  Side side;
  Move move;  // address relative to the side's subgame
};

// Adversary moves to inject, keyed by cycle; all of a cycle's moves are
// injected atomically before that cycle's machine step.
using Schedule = std::map<long, std::vector<ScheduledMove>>;

struct ScheduleOverrunError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TranscriptEvent {
  long cycle;
  Player player;
  Move move;  // full address
};

struct Transcript {
  std::vector<TranscriptEvent> events;
  std::vector<Nat> spacecost;   // per cycle, non-decreasing
  std::vector<Nat> background;  // per cycle
  long cycles = 0;
};

Move side_adjusted(const ScheduledMove& sm);

// Runs exactly `steps` cycles of a fresh session of s, injecting scheduled
// adversary moves at their cycles.
Transcript run_scheduled(const Strategy& s, const Schedule& sched, long steps);

struct Meters {
  std::vector<Nat> background;        // per cycle
  std::map<long, long> timecost;      // Top-move cycle -> cost
  std::vector<Nat> spacecost;         // per cycle
};

// background at cycle c = max size of adversary constants moved up to c;
// timecost of a Top move at cycle c = c - d with d the cycle of the latest
// adversary move before(or at) it, 0 when none.
Meters meters(const Transcript& t);

std::string transcript_to_string(const Transcript& t);

}  // namespace clarith
