#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "heis/geometry.hpp"
#include "heis/subgroups.hpp"
#include "heis/symdyn.hpp"

namespace heis {

enum class Backend { Auto, Generic, Linear2 };
std::string to_string(Backend backend);

enum class CodingTag { Forces, NotForcedInWindow };
std::string to_string(CodingTag tag);

/// Two locally admissible patterns on the window (values in window order)
/// that agree on the known cells and differ at `cell`.
struct CodingWitness {
  std::vector<Symbol> x;
  std::vector<Symbol> y;
  LatticeElement cell;
};

struct CodingQuery {
  SubshiftSystem system;
  std::vector<LatticeElement> A;
  std::vector<LatticeElement> B;
  Window window;
};

struct CodingVerdict {
  CodingTag tag = CodingTag::Forces;
  std::optional<CodingWitness> witness;
  std::string backend;
};

/// Does agreement on A force agreement on B, among locally admissible
/// patterns on the window?
CodingVerdict weak_code_check(const CodingQuery& q, Backend backend = Backend::Auto, const Caps& caps = {});

enum class ForcingStatus { Forced, NotForced, Undecided };

struct ForcingOutcome {
  ForcingStatus status = ForcingStatus::Undecided;
  std::optional<CodingWitness> witness;
};

/// Per-window forcing machinery. Linear2 keeps a kernel basis of the
/// admissible patterns; Generic enumerates them, or searches for a
/// disagreeing pair when the window exceeds the enumeration cap.
class CodingEngine {
 public:
  enum class Mode { Linear2, Enumerate, PairSearch };

  CodingEngine(const SubshiftSystem& system, Window window, Backend backend = Backend::Auto, const Caps& caps = {},
               std::size_t node_budget = 200000);

  Mode mode() const { return mode_; }
  std::string backend_name() const;
  const Window& window() const { return window_; }
  const SubshiftSystem& system() const { return system_; }
  std::size_t kernel_dim() const { return kernel_.size(); }
  std::size_t pattern_count() const { return patterns_.size(); }

  class Context;
  /// Fixes the known cells (window indices) for a batch of target queries.
  Context with_known(std::vector<std::size_t> known) const;

 private:
  SubshiftSystem system_;
  Window window_;
  Mode mode_;
  std::size_t node_budget_;
  std::vector<ConstraintInstance> instances_;
  std::vector<std::vector<std::size_t>> due_;  // instances completed at each cell
  std::vector<BitVector> kernel_;     // Linear2: basis vectors over cells
  std::vector<BitVector> cell_rows_;  // Linear2: cell_rows_[c][j] = kernel_[j][c]
  std::vector<std::vector<Symbol>> patterns_;  // Enumerate
};

class CodingEngine::Context {
 public:
  ForcingOutcome decide(std::size_t target, bool want_witness = true) const;
  const std::vector<std::size_t>& known() const { return known_; }

 private:
  friend class CodingEngine;
  Context(const CodingEngine& engine, std::vector<std::size_t> known);
  ForcingOutcome pair_search(std::size_t target) const;

  const CodingEngine* engine_;
  std::vector<std::size_t> known_;
  std::vector<bool> is_known_;
  std::shared_ptr<GF2Basis> basis_;                              // Linear2
  mutable std::shared_ptr<std::vector<BitVector>> annihilator_;  // Linear2, built on first witness
  std::vector<std::size_t> fiber_first_;  // Enumerate: first pattern with the same known values
};

/// Engines for cube windows, shared by every query on one system.
class EngineCache {
 public:
  EngineCache(SubshiftSystem system, Caps caps = {}, std::size_t node_budget = 200000)
      : system_(std::move(system)), caps_(caps), node_budget_(node_budget) {}
  /// Throws CapExceeded when a Linear2 window exceeds the cap.
  std::shared_ptr<const CodingEngine> cube(Integer half_width);
  const SubshiftSystem& system() const { return system_; }
  const Caps& caps() const { return caps_; }

 private:
  SubshiftSystem system_;
  Caps caps_;
  std::size_t node_budget_;
  std::mutex mutex_;
  std::map<Integer, std::shared_ptr<const CodingEngine>> engines_;
};

/// A vertical direction V, either exactly rational or a floating
/// approximation (evidence mode only).
class Direction {
 public:
  static Direction exact(VerticalGroup group);
  static Direction approximate(int dim, const std::vector<Vec<double>>& basis);

  int dim() const { return dim_; }
  bool is_exact() const { return group_.has_value(); }
  const std::optional<VerticalGroup>& group() const { return group_; }
  /// Dimension of V.
  Eigen::Index rank() const { return rank_; }
  /// dist(v, V) <= t, exactly when rational.
  bool within(const IntVec& v, const Rational& t) const;
  double off_squared(const IntVec& v) const;
  std::string label() const;

 private:
  int dim_ = 1;
  Eigen::Index rank_ = 0;
  std::optional<VerticalGroup> group_;
  Mat<double> projector_;
  std::string label_;
};

enum class ExpansivenessTag { Certified, EvidenceNonexpansive, Unknown };
std::string to_string(ExpansivenessTag tag);

/// Target fiber representative forced from the known slab. For Linear2 the
/// listed constraint instances sum (over GF(2)) to the target plus known cells.
struct ForcingInstance {
  LatticeElement target;
  std::vector<std::pair<std::size_t, LatticeElement>> combination;  // (constraint, anchor)
};

struct CertifyAttempt {
  Rational width;
  Integer half_width = 0;
  std::size_t known = 0;
  std::size_t targets = 0;
  std::size_t forced = 0;
  std::string status;
  std::optional<LatticeElement> first_open;
};

struct EvidenceStep {
  int n = 0;
  Integer half_width = 0;
  std::size_t slab_cells = 0;
  CodingWitness witness;
};

struct ExpansivenessVerdict {
  ExpansivenessTag tag = ExpansivenessTag::Unknown;
  std::string direction;
  std::string system;
  // Certified: the known slab has width `width`; the coding statement proved
  // is G^t(r) codes G^{t+epsilon}(0) with t = width + lambda, r = extent + lambda.
  Rational width;
  Rational epsilon;
  Rational lambda;
  std::optional<Rational> t;
  std::optional<Rational> r;
  std::optional<Integer> half_width;
  std::vector<ForcingInstance> certificate;
  // Evidence: slab width, pinned cell and one witness per box.
  std::optional<LatticeElement> p0;
  std::vector<EvidenceStep> chain;
  int evidence_n = 0;
  std::vector<CertifyAttempt> attempts;
  std::string note;
};

struct CertifyBudget {
  int t_max = 4;
  std::vector<Integer> half_widths{3, 4, 5, 6};
  Rational epsilon{1, 2};
};

struct EvidenceBudget {
  Rational t{1};
  int n = 4;
  std::size_t max_candidates = 8;
};

ExpansivenessVerdict certify_expansive(const VerticalGroup& G, EngineCache& cache, const CertifyBudget& budget = {});
ExpansivenessVerdict certify_expansive(const VerticalGroup& G, const SubshiftSystem& system,
                                       const CertifyBudget& budget = {}, const Caps& caps = {});

ExpansivenessVerdict nonexpansive_evidence(const Direction& direction, EngineCache& cache,
                                           const EvidenceBudget& budget = {});
ExpansivenessVerdict nonexpansive_evidence(const Direction& direction, const SubshiftSystem& system,
                                           const EvidenceBudget& budget = {}, const Caps& caps = {});

/// Certificate first, then evidence.
ExpansivenessVerdict direction_verdict(const VerticalGroup& G, EngineCache& cache, const CertifyBudget& certify,
                                       const EvidenceBudget& evidence);

/// Independent re-check of a Certified verdict: recomputes the target list
/// and verifies every forcing instance (GF(2) sums for Linear2, a fresh engine
/// run otherwise).
bool recheck_certificate(const ExpansivenessVerdict& verdict, const VerticalGroup& G, const SubshiftSystem& system,
                         const Caps& caps = {});
/// Re-checks an evidence chain with no engine: admissibility, agreement on
/// the slab and disagreement at p0, box by box.
bool verify_evidence(const ExpansivenessVerdict& verdict, const Direction& direction, const SubshiftSystem& system);

/// Cells of a cube window (window order) whose projection is within t of V.
std::vector<std::size_t> slab_cells(const Window& window, const Direction& direction, const Rational& t);
/// Lattice fiber representatives q with t < dist(q, V) <= outer and |proj_V q| <= along.
std::vector<LatticeElement> widening_targets(const VerticalGroup& G, const Rational& t, const Rational& outer,
                                             const Rational& along);

struct ScanBudget {
  CertifyBudget certify;
  EvidenceBudget evidence;
  unsigned threads = 0;  // 0: HEIS_THREADS or 1
};

struct ScanRow {
  std::string V;
  int k = 0;  // dim V; the vertical group has dimension k + 1
  VerticalGroup group;
  ExpansivenessTag verdict = ExpansivenessTag::Unknown;
  std::string t;
  std::string r;
  std::string window;
  long long millis = 0;
};

struct ScanSummary {
  std::size_t certified = 0;
  std::size_t evidence = 0;
  std::size_t unknown = 0;
  /// Some vertical group of dimension 2D has nonexpansiveness evidence.
  bool top_dimension_evidence = false;
  /// Every lower-dimensional direction with evidence lies in a top-dimension
  /// direction with evidence (only meaningful when both were scanned).
  bool evidence_lifts_to_top = true;
  /// No certified direction lies inside a direction with evidence.
  bool containment_consistent = true;
};

struct ScanReport {
  std::string system;
  std::vector<ScanRow> rows;
  ScanSummary summary;
};

/// ks may contain 0 for the axis alone.
ScanReport scan_directions(const SubshiftSystem& system, const std::vector<int>& ks, int height,
                           const ScanBudget& budget = {}, const Caps& caps = {});

struct ClosureReport {
  bool ok = true;
  std::vector<std::string> checks;
};

/// Closure properties of weak coding on the engine: unions of forcing instances force, and right
/// translates by c in C force.
ClosureReport coding_closure_check(const SubshiftSystem& system, const Window& window,
                                   const std::vector<LatticeElement>& A, const std::vector<LatticeElement>& B,
                                   const std::vector<LatticeElement>& A2, const std::vector<LatticeElement>& B2,
                                   const std::vector<LatticeElement>& C, const Caps& caps = {});

}  // namespace heis
