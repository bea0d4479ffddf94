#ifndef ZARFORGE_EVOLVE_HPP
#define ZARFORGE_EVOLVE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zarforge/local_search.hpp"
#include "zarforge/matrix.hpp"
#include "zarforge/rng.hpp"
#include "zarforge/scoring.hpp"

namespace zarforge {

/// A strategy configuration: a construction kind plus its named settings.
/// Kinds: explicit-seed, circulant, greedy, ripup-repair, pipeline.
struct StrategyGenome {
    std::string kind;
    std::map<std::string, double> numeric;
    std::map<std::string, std::string> choice;

    bool operator==(const StrategyGenome&) const = default;
};

struct NumericSpec {
    double min = 0;
    double max = 0;
    bool integer = true;
    double dflt = 0;
};

struct ChoiceSpec {
    std::vector<std::string> options;
    std::string dflt;
};

struct GenomeSchema {
    std::map<std::string, NumericSpec> numeric;
    std::map<std::string, ChoiceSpec> choice;
};

const std::vector<std::string>& genome_kinds();
const GenomeSchema& schema_for(const std::string& kind);

/// Schema defaults adapted to the instance (e.g. circulant modulus near n/2).
StrategyGenome default_genome(const std::string& kind, const ZarParams& params);

bool genome_is_schema_valid(const StrategyGenome& genome);

struct PopulationEntry {
    StrategyGenome genome;
    CandidateScore score;
    std::int64_t born_iteration = 0;
};

struct PhaseConfig {
    int iterations = 100;
    int checkpoint_every = 10;
    std::string mutator = "heuristic";
    std::uint64_t seed = 0;
};

/// Tournament of size 3 (uniform draws); highest total score wins,
/// ties to the lowest born_iteration. Throws on an empty population.
const PopulationEntry& select(const std::vector<PopulationEntry>& population, RngStream& rng);

using MutationBackend =
    std::function<StrategyGenome(const StrategyGenome&, const ZarParams&, RngStream&)>;

/// The built-in "heuristic" backend is always registered; an external
/// program-mutating backend can be plugged in under its own name.
void register_mutation_backend(const std::string& name, MutationBackend backend);

/// Applies the named backend; the result is always schema-valid.
/// Throws std::invalid_argument for an unknown backend.
StrategyGenome mutate(const StrategyGenome& genome, const std::string& backend,
                      const ZarParams& params, RngStream& rng);

inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000'000ULL;

/// Raised internally when a genome burns through its validator budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Runs the genome's construction, returning (primary, prospect).
/// Throws BudgetExceeded past step_budget validator cell-checks.
std::pair<BinaryMatrix, BinaryMatrix> materialize_genome(const StrategyGenome& genome,
                                                         const ZarParams& params,
                                                         std::uint64_t step_budget =
                                                             kDefaultStepBudget);

struct EvalOutcome {
    CandidateScore score;
    BinaryMatrix primary; // empty when the genome blew its budget
};

/// Scores the genome's two matrices against the tracker, then advances the
/// tracker from the primary. Budget overruns score as invalid (-1).
EvalOutcome evaluate(const StrategyGenome& genome, const ZarParams& params, SotaTracker& tracker,
                     std::int64_t iteration = -1, std::uint64_t step_budget = kDefaultStepBudget);

/// Injectable evaluation (e.g. a mock in tests): scores against the given
/// tracker without updating it; the harness applies the update itself.
using Evaluator =
    std::function<EvalOutcome(const StrategyGenome&, const ZarParams&, const SotaTracker&)>;

Evaluator default_evaluator(std::uint64_t step_budget = kDefaultStepBudget);

/// Full harness state; a checkpoint restores it bit-exactly.
struct HarnessState {
    int phase_index = 0;
    int iteration = 0;                 // completed iterations within the current phase
    std::int64_t global_iteration = 0; // completed iterations across the schedule
    std::vector<PopulationEntry> population;
    SotaTracker tracker;
    BinaryMatrix best;
    RngStream rng{0};
};

struct PhaseOptions {
    std::filesystem::path checkpoint_dir; // empty -> checkpoints disabled
    std::optional<std::int64_t> stop_bound; // stop once n_sota reaches this
    Evaluator evaluator;                  // null -> default_evaluator()
};

/// Runs (or resumes) one phase: iterations x {select, mutate, evaluate,
/// insert}, checkpointing every checkpoint_every iterations. A fresh phase
/// (iteration 0) seeds the stream from config.seed + phase_index. Stops at
/// the end of the iteration in which stop_bound is reached.
void run_phase(const ZarParams& params, const PhaseConfig& config, HarnessState& state,
               const PhaseOptions& options = {});

/// Runs the base phases, then keeps appending copies of the last phase while
/// the previous phase improved n_sota and the bound is unmatched. Stops on a
/// matched bound or a stagnant phase.
SearchResult run_schedule(const ZarParams& params, const std::vector<PhaseConfig>& base_phases,
                          const PhaseOptions& options = {});

/// Versioned self-describing text with a trailing FNV-1a checksum; written
/// atomically (temp file + rename). load verifies the checksum and throws
/// ChecksumError on mismatch or truncation.
void save_checkpoint(const HarnessState& state, const std::filesystem::path& path);
HarnessState load_checkpoint(const std::filesystem::path& path);

} // namespace zarforge

#endif
