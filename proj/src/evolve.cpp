#include "zarforge/evolve.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>

#include "zarforge/errors.hpp"
#include "zarforge/validator.hpp"

namespace zarforge {

// ---------------------------------------------------------------------------
// Genome schemas
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::string> kFillOrders = {"row-major", "reverse-row-major", "shuffled",
                                              "sparsest-row-first"};

std::map<std::string, GenomeSchema> make_schemas() {
    std::map<std::string, GenomeSchema> schemas;

    GenomeSchema explicit_seed;
    explicit_seed.numeric["perm_seed"] = {0, 2147483647, true, 999};
    schemas["explicit-seed"] = explicit_seed;

    GenomeSchema circulant;
    circulant.numeric["modulus"] = {2, 13, true, 11};
    schemas["circulant"] = circulant;

    GenomeSchema greedy;
    greedy.numeric["shuffle_seed"] = {0, 2147483647, true, 1};
    greedy.choice["fill_order"] = {kFillOrders, "row-major"};
    schemas["greedy"] = greedy;

    GenomeSchema ripup;
    ripup.numeric["restarts"] = {1, 2000, true, 60};
    ripup.numeric["k_min"] = {1, 30, true, 3};
    ripup.numeric["k_max"] = {1, 40, true, 12};
    ripup.numeric["improve_iters"] = {0, 200, true, 40};
    ripup.numeric["search_seed"] = {0, 2147483647, true, 0};
    // A ripup genome always starts from a constructed seed (bank or
    // circulant), never from a blank matrix.
    ripup.choice["seed_source"] = {{"bank", "circulant"}, "bank"};
    ripup.choice["fill_order"] = {kFillOrders, "shuffled"};
    schemas["ripup-repair"] = ripup;

    GenomeSchema pipeline;
    pipeline.numeric["modulus"] = {2, 13, true, 11};
    pipeline.numeric["extra_passes"] = {0, 3, true, 2};
    pipeline.choice["fill_order"] = {kFillOrders, "row-major"};
    schemas["pipeline"] = pipeline;

    return schemas;
}

const std::map<std::string, GenomeSchema>& schemas() {
    static const std::map<std::string, GenomeSchema> s = make_schemas();
    return s;
}

double clamp_numeric(const NumericSpec& spec, double v) {
    v = std::min(spec.max, std::max(spec.min, v));
    if (spec.integer) v = static_cast<double>(std::llround(v));
    return v;
}

void clamp_to_schema(StrategyGenome& genome) {
    const GenomeSchema& schema = schema_for(genome.kind);
    StrategyGenome out;
    out.kind = genome.kind;
    for (const auto& [key, spec] : schema.numeric) {
        const auto it = genome.numeric.find(key);
        out.numeric[key] = clamp_numeric(spec, it != genome.numeric.end() ? it->second : spec.dflt);
    }
    for (const auto& [key, spec] : schema.choice) {
        const auto it = genome.choice.find(key);
        const bool known = it != genome.choice.end() &&
                           std::find(spec.options.begin(), spec.options.end(), it->second) !=
                               spec.options.end();
        out.choice[key] = known ? it->second : spec.dflt;
    }
    if (out.kind == "ripup-repair" && out.numeric["k_min"] > out.numeric["k_max"])
        out.numeric["k_min"] = out.numeric["k_max"];
    genome = std::move(out);
}

int clamped_modulus(const ZarParams& params) {
    return std::max(2, std::min(13, params.n / 2));
}

} // namespace

const std::vector<std::string>& genome_kinds() {
    static const std::vector<std::string> kinds = {"explicit-seed", "circulant", "greedy",
                                                   "ripup-repair", "pipeline"};
    return kinds;
}

const GenomeSchema& schema_for(const std::string& kind) {
    const auto it = schemas().find(kind);
    if (it == schemas().end()) throw std::invalid_argument("unknown genome kind: " + kind);
    return it->second;
}

StrategyGenome default_genome(const std::string& kind, const ZarParams& params) {
    const GenomeSchema& schema = schema_for(kind);
    StrategyGenome genome;
    genome.kind = kind;
    for (const auto& [key, spec] : schema.numeric) genome.numeric[key] = spec.dflt;
    for (const auto& [key, spec] : schema.choice) genome.choice[key] = spec.dflt;
    if (genome.numeric.count("modulus"))
        genome.numeric["modulus"] = clamped_modulus(params);
    return genome;
}

bool genome_is_schema_valid(const StrategyGenome& genome) {
    const auto it = schemas().find(genome.kind);
    if (it == schemas().end()) return false;
    const GenomeSchema& schema = it->second;
    if (genome.numeric.size() != schema.numeric.size() ||
        genome.choice.size() != schema.choice.size())
        return false;
    for (const auto& [key, spec] : schema.numeric) {
        const auto v = genome.numeric.find(key);
        if (v == genome.numeric.end() || v->second < spec.min || v->second > spec.max) return false;
        if (spec.integer && v->second != static_cast<double>(std::llround(v->second))) return false;
    }
    for (const auto& [key, spec] : schema.choice) {
        const auto v = genome.choice.find(key);
        if (v == genome.choice.end() ||
            std::find(spec.options.begin(), spec.options.end(), v->second) == spec.options.end())
            return false;
    }
    if (genome.kind == "ripup-repair" &&
        genome.numeric.at("k_min") > genome.numeric.at("k_max"))
        return false;
    return true;
}

// ---------------------------------------------------------------------------
// Selection and mutation
// ---------------------------------------------------------------------------

const PopulationEntry& select(const std::vector<PopulationEntry>& population, RngStream& rng) {
    if (population.empty()) throw std::invalid_argument("select: empty population");
    std::size_t best = static_cast<std::size_t>(rng.next_below(population.size()));
    for (int draw = 1; draw < 3; ++draw) {
        const std::size_t idx = static_cast<std::size_t>(rng.next_below(population.size()));
        const PopulationEntry& a = population[idx];
        const PopulationEntry& b = population[best];
        if (a.score.total > b.score.total ||
            (a.score.total == b.score.total &&
             (a.born_iteration < b.born_iteration ||
              (a.born_iteration == b.born_iteration && idx < best))))
            best = idx;
    }
    return population[best];
}

namespace {

StrategyGenome heuristic_mutate(const StrategyGenome& genome, const ZarParams& params,
                                RngStream& rng) {
    StrategyGenome out = genome;
    clamp_to_schema(out);

    const std::uint64_t op = rng.next_below(3);
    if (op == 0) {
        // Jitter one numeric parameter by up to +/-20%.
        if (!out.numeric.empty()) {
            const std::size_t pick = static_cast<std::size_t>(rng.next_below(out.numeric.size()));
            auto it = out.numeric.begin();
            std::advance(it, pick);
            const double factor = 1.0 + (rng.next_unit() * 0.4 - 0.2);
            it->second = it->second * factor;
        }
    } else if (op == 1) {
        // Resample one choice parameter.
        if (!out.choice.empty()) {
            const std::size_t pick = static_cast<std::size_t>(rng.next_below(out.choice.size()));
            auto it = out.choice.begin();
            std::advance(it, pick);
            const ChoiceSpec& spec = schema_for(out.kind).choice.at(it->first);
            it->second = spec.options[rng.next_below(spec.options.size())];
        }
    } else {
        // Switch kind, keeping parameters that exist under both schemas.
        std::vector<std::string> alternatives;
        for (const std::string& kind : genome_kinds())
            if (kind != out.kind) alternatives.push_back(kind);
        const std::string target = alternatives[rng.next_below(alternatives.size())];
        StrategyGenome switched = default_genome(target, params);
        for (const auto& [key, value] : out.numeric)
            if (switched.numeric.count(key)) switched.numeric[key] = value;
        for (const auto& [key, value] : out.choice)
            if (switched.choice.count(key)) switched.choice[key] = value;
        out = std::move(switched);
    }

    clamp_to_schema(out);
    return out;
}

std::map<std::string, MutationBackend>& backend_registry() {
    static std::map<std::string, MutationBackend> registry = {
        {"heuristic", heuristic_mutate},
    };
    return registry;
}

std::mutex g_backend_mutex;

} // namespace

void register_mutation_backend(const std::string& name, MutationBackend backend) {
    std::lock_guard<std::mutex> lock(g_backend_mutex);
    backend_registry()[name] = std::move(backend);
}

StrategyGenome mutate(const StrategyGenome& genome, const std::string& backend,
                      const ZarParams& params, RngStream& rng) {
    MutationBackend fn;
    {
        std::lock_guard<std::mutex> lock(g_backend_mutex);
        const auto it = backend_registry().find(backend);
        if (it == backend_registry().end())
            throw std::invalid_argument("mutate: unknown backend \"" + backend + "\"");
        fn = it->second;
    }
    StrategyGenome out = fn(genome, params, rng);
    clamp_to_schema(out);
    return out;
}

// ---------------------------------------------------------------------------
// Materialization
// ---------------------------------------------------------------------------

namespace {

const CirculantBest& cached_circulant(int p, int s, int t) {
    static std::map<std::tuple<int, int, int>, CirculantBest> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_tuple(p, s, t);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, enumerate_two_block_circulant(p, s, t)).first;
    return it->second;
}

// The enumeration winner embedded into the instance's shape (extra rows stay
// zero; overhanging columns are cropped). Submatrices of valid matrices are
// valid, so the result is always a legal starting point.
BinaryMatrix cropped_circulant(int p, const ZarParams& params) {
    const CirculantBest& best = cached_circulant(p, params.s, params.t);
    const BinaryMatrix blocks = two_block_circulant(best.pair);
    BinaryMatrix out = new_matrix(params);
    for (int i = 0; i < std::min(p, params.m); ++i)
        for (int j = 0; j < std::min(2 * p, params.n); ++j)
            if (blocks.get(i, j)) out.set(i, j, true);
    return out;
}

FillPolicy policy_from(const std::string& order, std::uint64_t seed) {
    if (order == "row-major") return FillPolicy::row_major();
    if (order == "reverse-row-major") return FillPolicy::reverse_row_major();
    if (order == "shuffled") return FillPolicy::shuffled(seed);
    if (order == "sparsest-row-first") return FillPolicy::sparsest_row_first();
    throw std::invalid_argument("unknown fill order: " + order);
}

BinaryMatrix permuted_copy(const BinaryMatrix& m, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<int> row_perm(m.rows()), col_perm(m.cols());
    for (int i = 0; i < m.rows(); ++i) row_perm[i] = i;
    for (int j = 0; j < m.cols(); ++j) col_perm[j] = j;
    rng.shuffle(row_perm);
    rng.shuffle(col_perm);
    return permute(m, row_perm, col_perm);
}

BinaryMatrix resolve_search_seed(const std::string& source, const ZarParams& params) {
    if (source == "bank") {
        if (auto m = seed_bank(params.m, params.n)) return *m;
    }
    BinaryMatrix m = cropped_circulant(clamped_modulus(params), params);
    if (m.count_ones() > 0) return m;
    return greedy_fill(new_matrix(params), params, FillPolicy::row_major());
}

} // namespace

std::pair<BinaryMatrix, BinaryMatrix> materialize_genome(const StrategyGenome& genome,
                                                         const ZarParams& params,
                                                         std::uint64_t step_budget) {
    if (!genome_is_schema_valid(genome))
        throw std::invalid_argument("materialize_genome: genome fails its schema");

    const std::uint64_t start = validator_cell_checks();
    auto ensure_budget = [&] {
        if (validator_cell_checks() - start > step_budget)
            throw BudgetExceeded("materialize_genome: validator budget exhausted");
    };

    auto num = [&](const char* key) { return genome.numeric.at(key); };
    auto as_u64 = [&](const char* key) { return static_cast<std::uint64_t>(num(key)); };
    auto as_int = [&](const char* key) { return static_cast<int>(num(key)); };

    if (genome.kind == "explicit-seed") {
        BinaryMatrix m1 = seed_bank(params.m, params.n).value_or(new_matrix(params));
        BinaryMatrix m2 = permuted_copy(m1, as_u64("perm_seed"));
        ensure_budget();
        return {std::move(m1), std::move(m2)};
    }

    if (genome.kind == "circulant") {
        BinaryMatrix m1 = cropped_circulant(as_int("modulus"), params);
        ensure_budget();
        return {m1, m1};
    }

    if (genome.kind == "greedy") {
        const std::uint64_t seed = as_u64("shuffle_seed");
        const std::string& order = genome.choice.at("fill_order");
        BinaryMatrix m1 = greedy_fill(new_matrix(params), params, policy_from(order, seed));
        ensure_budget();
        BinaryMatrix m2 = greedy_fill(new_matrix(params), params, policy_from(order, seed + 1));
        ensure_budget();
        return {std::move(m1), std::move(m2)};
    }

    if (genome.kind == "ripup-repair") {
        BinaryMatrix seed_matrix = resolve_search_seed(genome.choice.at("seed_source"), params);
        ensure_budget();
        RipupConfig config;
        config.restarts = as_int("restarts");
        config.k_min = as_int("k_min");
        config.k_max = as_int("k_max");
        config.improve_iters = as_int("improve_iters");
        config.seed = as_u64("search_seed");
        config.fill_policy = policy_from(genome.choice.at("fill_order"), config.seed);
        SearchResult result = ripup_repair_search(seed_matrix, params, config);
        ensure_budget();
        BinaryMatrix m2 = permuted_copy(result.best, config.seed + 101);
        return {std::move(result.best), std::move(m2)};
    }

    if (genome.kind == "pipeline") {
        BinaryMatrix g = cropped_circulant(as_int("modulus"), params);
        ensure_budget();
        g = greedy_fill(g, params, policy_from(genome.choice.at("fill_order"), 0));
        ensure_budget();
        const int extra = as_int("extra_passes");
        for (int pass = 0; pass < extra; ++pass) {
            g = greedy_fill(g, params,
                            pass % 2 == 0 ? FillPolicy::reverse_row_major()
                                          : FillPolicy::row_major());
            ensure_budget();
        }
        return {g, g};
    }

    throw std::invalid_argument("materialize_genome: unknown kind " + genome.kind);
}

EvalOutcome evaluate(const StrategyGenome& genome, const ZarParams& params, SotaTracker& tracker,
                     std::int64_t iteration, std::uint64_t step_budget) {
    EvalOutcome out;
    try {
        auto [m1, m2] = materialize_genome(genome, params, step_budget);
        out.score = score_candidate(m1, m2, params, tracker);
        out.primary = std::move(m1);
    } catch (const BudgetExceeded&) {
        out.score = CandidateScore{-1.0, 0.0, -1.0};
        return out;
    }
    tracker = update_sota(tracker, out.primary, params, iteration);
    return out;
}

Evaluator default_evaluator(std::uint64_t step_budget) {
    return [step_budget](const StrategyGenome& genome, const ZarParams& params,
                         const SotaTracker& tracker) {
        EvalOutcome out;
        try {
            auto [m1, m2] = materialize_genome(genome, params, step_budget);
            out.score = score_candidate(m1, m2, params, tracker);
            out.primary = std::move(m1);
        } catch (const BudgetExceeded&) {
            out.score = CandidateScore{-1.0, 0.0, -1.0};
        }
        return out;
    };
}

// ---------------------------------------------------------------------------
// Phase and schedule loops
// ---------------------------------------------------------------------------

namespace {

std::string checkpoint_name(int phase, int iteration) {
    return "ckpt_p" + std::to_string(phase) + "_i" + std::to_string(iteration) + ".txt";
}

// Re-verifies the primary before crediting it; genome output is never
// trusted directly.
void credit(HarnessState& state, const ZarParams& params, const BinaryMatrix& primary) {
    if (primary.rows() != params.m || primary.cols() != params.n) return;
    const std::int64_t before = state.tracker.n_sota;
    state.tracker = update_sota(state.tracker, primary, params, state.global_iteration);
    if (state.tracker.n_sota > before) state.best = primary;
}

} // namespace

void run_phase(const ZarParams& params, const PhaseConfig& config, HarnessState& state,
               const PhaseOptions& options) {
    if (config.iterations < 0) throw std::invalid_argument("run_phase: negative iterations");
    if (config.checkpoint_every < 1)
        throw std::invalid_argument("run_phase: checkpoint_every must be >= 1");
    const Evaluator evaluator = options.evaluator ? options.evaluator : default_evaluator();

    if (state.iteration == 0)
        state.rng = RngStream(config.seed + static_cast<std::uint64_t>(state.phase_index));

    for (int it = state.iteration + 1; it <= config.iterations; ++it) {
        const PopulationEntry& parent = select(state.population, state.rng);
        StrategyGenome child = mutate(parent.genome, config.mutator, params, state.rng);
        const EvalOutcome outcome = evaluator(child, params, state.tracker);

        state.global_iteration += 1;
        state.population.push_back(
            PopulationEntry{std::move(child), outcome.score, state.global_iteration});
        credit(state, params, outcome.primary);
        state.iteration = it;

        if (!options.checkpoint_dir.empty() && it % config.checkpoint_every == 0)
            save_checkpoint(state, options.checkpoint_dir / checkpoint_name(state.phase_index, it));

        if (options.stop_bound && state.tracker.n_sota >= *options.stop_bound) return;
    }

    state.phase_index += 1;
    state.iteration = 0;
}

SearchResult run_schedule(const ZarParams& params, const std::vector<PhaseConfig>& base_phases,
                          const PhaseOptions& options) {
    if (base_phases.empty()) throw std::invalid_argument("run_schedule: need at least one phase");
    const Evaluator evaluator = options.evaluator ? options.evaluator : default_evaluator();
    PhaseOptions phase_options = options;
    phase_options.evaluator = evaluator;

    HarnessState state;
    state.best = new_matrix(params);

    // Alg. base program: the population starts from one evaluated genome.
    StrategyGenome base = default_genome("explicit-seed", params);
    const EvalOutcome outcome = evaluator(base, params, state.tracker);
    state.population.push_back(PopulationEntry{std::move(base), outcome.score, 0});
    credit(state, params, outcome.primary);

    auto matched = [&] {
        return options.stop_bound && state.tracker.n_sota >= *options.stop_bound;
    };

    bool improved_last = false;
    for (const PhaseConfig& config : base_phases) {
        if (matched()) break;
        const std::int64_t before = state.tracker.n_sota;
        run_phase(params, config, state, phase_options);
        improved_last = state.tracker.n_sota > before;
    }
    while (!matched() && improved_last) {
        const std::int64_t before = state.tracker.n_sota;
        run_phase(params, base_phases.back(), state, phase_options);
        improved_last = state.tracker.n_sota > before;
    }

    SearchResult result;
    result.best = state.best;
    result.best_ones = state.tracker.n_sota;
    result.restarts_used = static_cast<int>(state.global_iteration);
    result.hit_target = matched();
    return result;
}

// ---------------------------------------------------------------------------
// Checkpoints
// ---------------------------------------------------------------------------

namespace {

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
    return std::strtoull(s.c_str(), nullptr, 16);
}

// Hexfloat keeps doubles bit-exact through the text round trip.
std::string dbl_to_text(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double text_to_dbl(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::string genome_to_text(const StrategyGenome& genome) {
    std::string out = "kind=" + genome.kind;
    out += " numeric=";
    bool first = true;
    for (const auto& [key, value] : genome.numeric) {
        if (!first) out += ",";
        out += key + ":" + dbl_to_text(value);
        first = false;
    }
    out += " choice=";
    first = true;
    for (const auto& [key, value] : genome.choice) {
        if (!first) out += ",";
        out += key + ":" + value;
        first = false;
    }
    return out;
}

std::map<std::string, std::string> parse_kv_tokens(std::istringstream& in) {
    std::map<std::string, std::string> kv;
    std::string token;
    while (in >> token) {
        const std::size_t eq = token.find('=');
        if (eq == std::string::npos) throw ParseError("checkpoint: malformed token " + token);
        kv[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return kv;
}

void split_pairs(const std::string& text, const std::function<void(std::string, std::string)>& f) {
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        const std::string item = text.substr(start, end - start);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos) throw ParseError("checkpoint: malformed pair " + item);
        f(item.substr(0, colon), item.substr(colon + 1));
        start = end + 1;
    }
}

} // namespace

void save_checkpoint(const HarnessState& state, const std::filesystem::path& path) {
    std::ostringstream out;
    out << "zarforge-checkpoint v1\n";
    out << "phase " << state.phase_index << "\n";
    out << "iteration " << state.iteration << "\n";
    out << "global_iteration " << state.global_iteration << "\n";
    out << "nsota " << state.tracker.n_sota << "\n";
    out << "history " << state.tracker.history.size() << "\n";
    for (const auto& [iter, value] : state.tracker.history) out << iter << " " << value << "\n";
    const auto rng_state = state.rng.state();
    out << "rng " << hex64(state.rng.seed());
    for (const std::uint64_t w : rng_state) out << " " << hex64(w);
    out << "\n";
    out << "population " << state.population.size() << "\n";
    for (const PopulationEntry& entry : state.population) {
        out << "entry born=" << entry.born_iteration << " s1=" << dbl_to_text(entry.score.s1)
            << " s2=" << dbl_to_text(entry.score.s2)
            << " total=" << dbl_to_text(entry.score.total) << " " << genome_to_text(entry.genome)
            << "\n";
    }
    out << "best " << state.best.rows() << " " << state.best.cols() << "\n";
    for (int i = 0; i < state.best.rows(); ++i) {
        for (int j = 0; j < state.best.cols(); ++j) out << (state.best.get(i, j) ? '1' : '0');
        out << "\n";
    }

    std::string body = out.str();
    body += "checksum " + hex64(fnv1a(body)) + "\n";

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("save_checkpoint: cannot open " + tmp.string());
        file.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!file) throw std::runtime_error("save_checkpoint: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

HarnessState load_checkpoint(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("load_checkpoint: cannot open " + path.string());
    std::ostringstream buffer;
    buffer << file.rdbuf();
    const std::string text = buffer.str();

    const std::size_t mark = text.rfind("checksum ");
    if (mark == std::string::npos || (mark != 0 && text[mark - 1] != '\n'))
        throw ChecksumError("load_checkpoint: truncated file, checksum line missing");
    const std::string body = text.substr(0, mark);
    std::istringstream tail(text.substr(mark));
    std::string word, sum_hex;
    tail >> word >> sum_hex;
    if (fnv1a(body) != parse_hex64(sum_hex))
        throw ChecksumError("load_checkpoint: checksum mismatch");

    std::istringstream in(body);
    std::string line;
    auto next_line = [&]() -> std::string {
        if (!std::getline(in, line)) throw ParseError("checkpoint: unexpected end of file");
        return line;
    };

    if (next_line() != "zarforge-checkpoint v1")
        throw ParseError("checkpoint: unknown header/version");

    HarnessState state;
    auto expect_field = [&](const std::string& name) -> std::istringstream {
        std::istringstream ls(next_line());
        std::string key;
        ls >> key;
        if (key != name) throw ParseError("checkpoint: expected field " + name);
        return ls;
    };

    expect_field("phase") >> state.phase_index;
    expect_field("iteration") >> state.iteration;
    expect_field("global_iteration") >> state.global_iteration;
    expect_field("nsota") >> state.tracker.n_sota;

    std::size_t history_count = 0;
    expect_field("history") >> history_count;
    for (std::size_t k = 0; k < history_count; ++k) {
        std::istringstream ls(next_line());
        std::int64_t iter = 0, value = 0;
        if (!(ls >> iter >> value)) throw ParseError("checkpoint: bad history row");
        state.tracker.history.emplace_back(iter, value);
    }

    {
        std::istringstream ls = expect_field("rng");
        std::string seed_hex;
        ls >> seed_hex;
        std::array<std::uint64_t, 4> words{};
        for (auto& w : words) {
            std::string wx;
            if (!(ls >> wx)) throw ParseError("checkpoint: bad rng line");
            w = parse_hex64(wx);
        }
        state.rng = RngStream(parse_hex64(seed_hex));
        state.rng.set_state(words);
    }

    std::size_t population_count = 0;
    expect_field("population") >> population_count;
    for (std::size_t k = 0; k < population_count; ++k) {
        std::istringstream ls(next_line());
        std::string tag;
        ls >> tag;
        if (tag != "entry") throw ParseError("checkpoint: expected entry line");
        const std::map<std::string, std::string> kv = parse_kv_tokens(ls);
        PopulationEntry entry;
        entry.born_iteration = std::strtoll(kv.at("born").c_str(), nullptr, 10);
        entry.score.s1 = text_to_dbl(kv.at("s1"));
        entry.score.s2 = text_to_dbl(kv.at("s2"));
        entry.score.total = text_to_dbl(kv.at("total"));
        entry.genome.kind = kv.at("kind");
        split_pairs(kv.at("numeric"),
                    [&](std::string key, std::string value) {
                        entry.genome.numeric[key] = text_to_dbl(value);
                    });
        split_pairs(kv.at("choice"), [&](std::string key, std::string value) {
            entry.genome.choice[key] = std::move(value);
        });
        state.population.push_back(std::move(entry));
    }

    int rows = 0, cols = 0;
    expect_field("best") >> rows >> cols;
    BinaryMatrix best(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const std::string row_line = next_line();
        if (static_cast<int>(row_line.size()) != cols)
            throw ParseError("checkpoint: ragged best-matrix row");
        for (int j = 0; j < cols; ++j)
            if (row_line[j] == '1')
                best.set(i, j, true);
            else if (row_line[j] != '0')
                throw ParseError("checkpoint: bad best-matrix character");
    }
    state.best = std::move(best);
    return state;
}

} // namespace zarforge
