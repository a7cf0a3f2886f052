#include "embal/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "embal/analogy.hpp"
#include "embal/balance_opt.hpp"
#include "embal/cooccur.hpp"
#include "embal/corpus.hpp"
#include "embal/glove.hpp"
#include "embal/kernels.hpp"
#include "embal/merge.hpp"
#include "embal/neighbors.hpp"
#include "embal/report.hpp"

namespace fs = std::filesystem;

namespace embal {
namespace {

// Rethrows module errors with the pipeline stage that raised them.
template <class F>
auto staged(const std::string& stage, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const Error& e) {
        throw Error(stage + ": " + e.what());
    }
}

std::string num(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string short_num(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", value);
    return buf;
}

/// Run directory with content-addressed artifacts and an index mapping method -> file.
class OutputDir {
public:
    explicit OutputDir(fs::path root) : root_(std::move(root)) { fs::create_directories(root_); }

    [[nodiscard]] const fs::path& root() const { return root_; }

    /// "<stem>-<hash>.<ext>" where the hash covers every metadata field.
    fs::path artifact(const std::string& stem, const std::string& ext, Metadata& meta) const {
        Fnv1a h;
        for (const auto& [k, v] : meta.fields())
            if (k != "config_hash") h.update(k + "=" + v);
        const std::string hash = hex64(h.digest()).substr(0, 12);
        meta.set("config_hash", hash);
        return root_ / (stem + "-" + hash + ext);
    }

    void record(const std::string& name, const fs::path& file) const {
        std::vector<std::pair<std::string, std::string>> entries = read_index();
        const std::string rel = file.filename().string();
        auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.first == name; });
        if (it != entries.end())
            it->second = rel;
        else
            entries.emplace_back(name, rel);
        std::ofstream out(root_ / "index.tsv");
        for (const auto& [k, v] : entries) out << k << '\t' << v << '\n';
    }

    /// "@name" looks the artifact up in the index; anything else is a path.
    [[nodiscard]] fs::path resolve(const std::string& ref) const {
        if (ref.empty() || ref.front() != '@') return ref;
        const std::string name = ref.substr(1);
        for (const auto& [k, v] : read_index())
            if (k == name) return root_ / v;
        throw InvalidArgument("no artifact named '" + name + "' in " + (root_ / "index.tsv").string());
    }

private:
    [[nodiscard]] std::vector<std::pair<std::string, std::string>> read_index() const {
        std::vector<std::pair<std::string, std::string>> entries;
        std::ifstream in(root_ / "index.tsv");
        std::string line;
        while (std::getline(in, line)) {
            const auto tab = line.find('\t');
            if (tab != std::string::npos) entries.emplace_back(line.substr(0, tab), line.substr(tab + 1));
        }
        return entries;
    }

    fs::path root_;
};

struct LoadedEmbedding {
    EmbeddingMatrix embedding;
    Metadata meta;
    fs::path path;
};

LoadedEmbedding load_embedding(const OutputDir& dir, const std::string& ref) {
    const fs::path path = dir.resolve(ref);
    return staged("read " + path.string(), [&] {
        LoadedEmbedding e{read_word2vec(path), {}, path};
        if (fs::exists(sidecar_path(path))) e.meta = Metadata::load(sidecar_path(path));
        if (e.embedding.method().empty()) e.embedding.set_method(path.stem().string());
        return e;
    });
}

void save_embedding(const OutputDir& dir, const std::string& name, EmbeddingMatrix embedding, Metadata meta,
                    std::ostream& out) {
    meta.set("method", name);
    meta.set("vocab_hash", hex64(embedding.vocab_hash()));
    const fs::path path = dir.artifact(name, ".vec", meta);
    embedding.set_method(name);
    write_word2vec(path, embedding);
    meta.save(sidecar_path(path));
    dir.record(name, path);
    out << name << '\t' << path.string() << '\n';
}

std::vector<std::size_t> parse_sizes(const std::vector<std::string>& items) {
    std::vector<std::size_t> out;
    for (const auto& s : items) out.push_back(static_cast<std::size_t>(std::stoul(s)));
    return out;
}

// ---------------------------------------------------------------- train

struct TrainOptions {
    std::vector<std::string> corpus;
    std::string scope = "joint";
    std::string small_label;
    std::string large_label;
    std::uint64_t min_count = 5;
    int window = 5;
    GloveConfig glove;
    std::string export_mode = "sum";
};

const std::map<std::string, std::string> kScopeMethod = {
    {"small", "small"}, {"large", "large"}, {"joint", "joint"}, {"upsampled-joint", "samp"}};
const std::map<std::string, std::string> kMethodId = {
    {"small", "a"}, {"large", "b"}, {"joint", "1"}, {"avg", "2"}, {"con", "3"},
    {"pca", "4"},   {"samp", "5"},  {"wavg", "6"}};

void cmd_train(const TrainOptions& o, const OutputDir& dir, std::ostream& out) {
    std::vector<fs::path> files(o.corpus.begin(), o.corpus.end());
    const DocumentSet docs = staged("corpus", [&] { return read_corpus(files); });
    const auto labels = docs.labels();

    std::string small = o.small_label;
    std::string large = o.large_label;
    if (small.empty() || large.empty()) {
        if (labels.size() != 2)
            throw InvalidArgument("corpus: expected exactly two subsets (one file each), found " +
                                  std::to_string(labels.size()) + "; name them with --small-label/--large-label");
        std::vector<std::string> l(labels.begin(), labels.end());
        if (docs.count(l[1]) < docs.count(l[0])) std::swap(l[0], l[1]);
        if (small.empty()) small = l[0] == large ? l[1] : l[0];
        if (large.empty()) large = small == l[0] ? l[1] : l[0];
    }
    for (const auto& label : {small, large})
        if (!labels.count(label)) throw InvalidArgument("corpus: unknown subset label '" + label + "'");
    if (small == large) throw InvalidArgument("corpus: small and large subset labels must differ");

    const auto vocab = std::make_shared<const Vocabulary>(
        staged("vocabulary", [&] { return build_vocabulary(docs, o.min_count); }));

    DocumentSet training = staged("scope", [&] {
        if (o.scope == "small") return docs.subset(small);
        if (o.scope == "large") return docs.subset(large);
        if (o.scope == "joint") return docs;
        if (o.scope == "upsampled-joint")
            return upsample(docs, small, std::max(docs.count(small), docs.count(large)), o.glove.seed);
        throw InvalidArgument("unknown scope '" + o.scope + "'");
    });
    const std::string method = kScopeMethod.at(o.scope);

    Metadata meta;
    meta.set("method_id", kMethodId.at(method));
    meta.set("scope", o.scope);
    meta.set("small_label", small);
    meta.set("large_label", large);
    meta.set("docs_small", std::to_string(docs.count(small)));
    meta.set("docs_large", std::to_string(docs.count(large)));
    meta.set("training_docs", std::to_string(training.size()));
    meta.set("min_count", std::to_string(o.min_count));
    meta.set("window", std::to_string(o.window));
    meta.set("dim", std::to_string(o.glove.dim));
    meta.set("x_max", num(o.glove.x_max));
    meta.set("alpha", num(o.glove.alpha));
    meta.set("epochs", std::to_string(o.glove.epochs));
    meta.set("learning_rate", num(o.glove.learning_rate));
    meta.set("seed", std::to_string(o.glove.seed));
    meta.set("export", o.export_mode);
    {
        Fnv1a h;
        for (const auto& doc : training.documents()) {
            h.update(doc.label);
            h.update(doc.text);
        }
        meta.set("corpus_hash", hex64(h.digest()));
    }

    Metadata vocab_meta;
    vocab_meta.set("vocab_hash", hex64(vocab->hash()));
    vocab->save(dir.artifact("vocab", ".txt", vocab_meta));

    const CooccurrenceMatrix cooc =
        staged("cooccurrence", [&] { return count_cooccurrences(training, *vocab, o.window); });
    Metadata cooc_meta = meta;
    cooc_meta.set("kind", "cooccurrence");
    cooc_meta.set("vocab_hash", hex64(vocab->hash()));
    const fs::path cooc_path = dir.artifact("cooc-" + method, ".txt", cooc_meta);
    cooc.save(cooc_path);
    cooc_meta.save(sidecar_path(cooc_path));
    dir.record("cooc-" + method, cooc_path);
    out << "cooc-" << method << '\t' << cooc_path.string() << '\n';

    // Words of the shared vocabulary that never occur in this scope keep their initial vectors.
    std::vector<bool> seen(vocab->size(), false);
    for (const auto& e : cooc.entries()) seen[e.i] = seen[e.j] = true;
    const auto absent = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), false));
    meta.set("absent_words", std::to_string(absent));

    const GloveModel model = staged("glove", [&] { return train_glove(cooc, o.glove); });
    const ExportMode mode = o.export_mode == "word" ? ExportMode::word_only : ExportMode::sum;
    save_embedding(dir, method, export_embedding(model, mode, vocab), meta, out);
}

// ---------------------------------------------------------------- merge

struct MergeOptions {
    std::string method;
    std::string small;
    std::string large;
    std::optional<double> w_small;
    int pca_dim = 0;
    bool align = false;
};

void cmd_merge(const MergeOptions& o, const OutputDir& dir, std::ostream& out) {
    const auto s = load_embedding(dir, o.small);
    auto l = load_embedding(dir, o.large);
    require_aligned(s.embedding, l.embedding, "merge");
    if (o.align) l.embedding = align_procrustes(l.embedding, s.embedding);

    Metadata meta;
    meta.set("method_id", kMethodId.count(o.method) ? kMethodId.at(o.method) : o.method);
    meta.set("input_small", s.meta.get("config_hash", s.path.filename().string()));
    meta.set("input_large", l.meta.get("config_hash", l.path.filename().string()));
    meta.set("align", o.align ? "procrustes" : "none");
    for (const auto& key : {"docs_small", "docs_large", "small_label", "large_label", "seed"})
        if (s.meta.has(key)) meta.set(key, s.meta.get(key));

    EmbeddingMatrix merged = staged("merge", [&] {
        if (o.method == "avg") return average(s.embedding, l.embedding);
        if (o.method == "con") return concatenate(s.embedding, l.embedding);
        if (o.method == "pca") {
            const Eigen::Index d = o.pca_dim > 0 ? o.pca_dim : s.embedding.dim();
            meta.set("pca_dim", std::to_string(d));
            return pca_merge(s.embedding, l.embedding, d);
        }
        if (o.method == "wavg") {
            const SubsetWeights w = [&] {
                if (o.w_small) return SubsetWeights(*o.w_small);
                const auto ns = s.meta.get("docs_small");
                const auto nl = s.meta.get("docs_large");
                if (ns.empty() || nl.empty())
                    throw InvalidArgument("wavg needs --w-small or subset document counts in the input metadata");
                return subset_weights(std::stoul(ns), std::stoul(nl));
            }();
            meta.set("w_small", num(w.small()));
            return weighted_average(s.embedding, l.embedding, w);
        }
        throw InvalidArgument("unknown merge method '" + o.method + "'");
    });
    save_embedding(dir, o.method, std::move(merged), meta, out);
}

// ---------------------------------------------------------------- optimize

struct OptimizeOptions {
    std::string joint;
    std::string wavg;
    std::string cooc;
    BalanceOptConfig opt;
};

void cmd_optimize(const OptimizeOptions& o, const OutputDir& dir, std::ostream& out) {
    const auto joint = load_embedding(dir, o.joint);
    const auto wavg = load_embedding(dir, o.wavg);
    const fs::path cooc_path = dir.resolve(o.cooc);
    const CooccurrenceMatrix cooc =
        staged("read " + cooc_path.string(), [&] { return CooccurrenceMatrix::load(cooc_path, joint.embedding.vocab_hash()); });

    const BalanceResult result =
        staged("optimize", [&] { return optimize_balance(joint.embedding, wavg.embedding, cooc, o.opt); });

    const std::string name = "tau" + short_num(o.opt.tau);
    Metadata meta;
    meta.set("method_id", "tau");
    meta.set("tau", num(o.opt.tau));
    meta.set("learning_rate", num(o.opt.learning_rate));
    meta.set("steps", std::to_string(o.opt.steps));
    meta.set("beta1", num(o.opt.beta1));
    meta.set("beta2", num(o.opt.beta2));
    meta.set("eps", num(o.opt.eps));
    meta.set("a_min", num(o.opt.a_min));
    meta.set("a_max", num(o.opt.a_max));
    meta.set("a_init", num(o.opt.a_init));
    meta.set("x_max", num(o.opt.x_max));
    meta.set("alpha", num(o.opt.alpha));
    meta.set("seed", std::to_string(o.opt.seed));
    meta.set("best_step", std::to_string(result.best_step));
    meta.set("input_joint", joint.meta.get("config_hash", joint.path.filename().string()));
    meta.set("input_wavg", wavg.meta.get("config_hash", wavg.path.filename().string()));
    for (const auto& key : {"docs_small", "docs_large", "small_label", "large_label"})
        if (joint.meta.has(key)) meta.set(key, joint.meta.get(key));

    Metadata traj_meta = meta;
    const fs::path traj = dir.artifact(name + "-trajectory", ".csv", traj_meta);
    write_trajectory_csv(traj, result.trajectory);
    dir.record(name + "-trajectory", traj);
    out << name << "-trajectory\t" << traj.string() << '\n';
    save_embedding(dir, name, result.embedding, meta, out);
}

// ---------------------------------------------------------------- measure / report

struct LabeledRef {
    std::string label;
    std::string ref;
};

LabeledRef parse_labeled(const std::string& item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) return {"", item};
    return {item.substr(0, eq), item.substr(eq + 1)};
}

struct ReportOptions {
    std::string small;
    std::string large;
    std::vector<std::string> embeddings;
    std::string questions;
    std::vector<std::string> words;
    std::vector<std::string> rank_others;
    std::size_t rank_n = 10;
    std::size_t rank_cutoff = 25;
    std::string sweep_a;
    std::string sweep_b;
    std::vector<double> grid;
    std::vector<std::string> n_set = {"5", "10", "25", "50"};
    std::string subdir = "report";
};

void check_same_vocabulary(const std::vector<const LoadedEmbedding*>& all) {
    for (const auto* e : all)
        if (e->embedding.vocab_hash() != all.front()->embedding.vocab_hash() ||
            e->embedding.rows() != all.front()->embedding.rows())
            throw ShapeMismatch("report: " + e->path.string() + " is not index-aligned with " +
                                all.front()->path.string());
}

void cmd_report(const ReportOptions& o, const OutputDir& dir, std::ostream& out, bool full) {
    if (o.small.empty() || o.large.empty()) throw InvalidArgument("report: missing --small or --large baseline");
    const auto small = load_embedding(dir, o.small);
    const auto large = load_embedding(dir, o.large);

    std::vector<std::pair<std::string, LoadedEmbedding>> rows;
    rows.emplace_back(small.embedding.method(), small);
    rows.emplace_back(large.embedding.method(), large);
    for (const auto& item : o.embeddings) {
        const auto [label, ref] = parse_labeled(item);
        auto e = load_embedding(dir, ref);
        rows.emplace_back(label.empty() ? e.embedding.method() : label, std::move(e));
    }
    std::vector<const LoadedEmbedding*> all;
    for (const auto& r : rows) all.push_back(&r.second);
    check_same_vocabulary(all);

    const auto n_set = parse_sizes(o.n_set);
    if (n_set.empty()) throw InvalidArgument("report: empty neighborhood list");
    const std::size_t k = *std::max_element(n_set.begin(), n_set.end());
    const NeighborIndex small_index(small.embedding, k);
    const NeighborIndex large_index(large.embedding, k);

    std::vector<AnalogyQuestion> questions;
    if (!o.questions.empty()) questions = staged("analogy", [&] { return parse_analogy_file(o.questions); });

    std::vector<BalanceReport> reports;
    for (const auto& [label, e] : rows) {
        BalanceReport r = staged("measure " + label, [&] {
            return balance_report(NeighborIndex(e.embedding, k), small_index, large_index, n_set);
        });
        r.method = label;
        if (!questions.empty()) {
            const auto result = evaluate_analogies(e.embedding, questions);
            for (const auto n : kAnalogyTopN) r.analogy[n] = result.overall.accuracy(n);
        }
        reports.push_back(std::move(r));
    }

    const fs::path report_dir = dir.root() / o.subdir;
    fs::create_directories(report_dir);
    write_results_csv(report_dir / "results.csv", reports);
    {
        std::ofstream md(report_dir / "results.md");
        md << results_markdown(reports);
    }
    out << results_markdown(reports);
    if (!full) return;

    if (!o.words.empty()) {
        std::vector<std::pair<std::string, const EmbeddingMatrix*>> others;
        for (std::size_t r = 2; r < rows.size(); ++r)
            if (o.rank_others.empty() ||
                std::find(o.rank_others.begin(), o.rank_others.end(), rows[r].first) != o.rank_others.end())
                others.emplace_back(rows[r].first, &rows[r].second.embedding);
        std::ofstream md(report_dir / "ranks.md");
        for (const auto& word : o.words) {
            for (const auto* base : {&rows[0], &rows[1]}) {
                const auto table = staged("rank table", [&] {
                    return neighbor_rank_table(word, base->second.embedding, others, o.rank_n, o.rank_cutoff);
                });
                md << rank_table_markdown(table, base->first) << '\n';
            }
        }
    }

    if (!o.sweep_a.empty() && !o.sweep_b.empty()) {
        const auto a = load_embedding(dir, o.sweep_a);
        const auto b = load_embedding(dir, o.sweep_b);
        const auto grid = o.grid.empty() ? default_sweep_grid() : o.grid;
        const auto points = staged("sweep", [&] {
            return interpolation_sweep(a.embedding, b.embedding, small.embedding, large.embedding, grid, n_set);
        });
        write_sweep_csv(report_dir / "sweep.csv", points);
    }
}

struct SweepOptions {
    std::string a;
    std::string b;
    std::string small;
    std::string large;
    std::vector<double> grid;
    std::vector<std::string> n_set = {"5", "10", "25", "50"};
    std::string csv;
};

void cmd_sweep(const SweepOptions& o, const OutputDir& dir, std::ostream& out) {
    const auto a = load_embedding(dir, o.a);
    const auto b = load_embedding(dir, o.b);
    const auto small = load_embedding(dir, o.small);
    const auto large = load_embedding(dir, o.large);
    const auto grid = o.grid.empty() ? default_sweep_grid() : o.grid;
    const auto points = staged("sweep", [&] {
        return interpolation_sweep(a.embedding, b.embedding, small.embedding, large.embedding, grid,
                                   parse_sizes(o.n_set));
    });
    const fs::path path = o.csv.empty() ? dir.root() / "sweep.csv" : fs::path(o.csv);
    write_sweep_csv(path, points);
    out << "sweep\t" << path.string() << '\n';
}

struct AnalogyOptions {
    std::string embedding;
    std::string questions;
    std::string csv;
};

void cmd_analogy(const AnalogyOptions& o, const OutputDir& dir, std::ostream& out) {
    const auto e = load_embedding(dir, o.embedding);
    const auto questions = staged("analogy", [&] { return parse_analogy_file(o.questions); });
    const auto result = evaluate_analogies(e.embedding, questions);
    if (!o.csv.empty()) write_analogy_csv(o.csv, result);
    out << "evaluated " << result.overall.evaluated << " of " << result.overall.total << " questions\n";
    for (const auto n : kAnalogyTopN) {
        const auto acc = result.overall.accuracy(n);
        out << "acc@" << n << '\t' << (acc ? short_num(100.0 * *acc) + "%" : std::string("-")) << '\n';
    }
}

// ---------------------------------------------------------------- config file

std::map<std::string, std::string> read_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read config file " + path.string());
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return values;
}

bool mentions(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

}  // namespace

int run_cli(const std::vector<std::string>& input_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Train subset embeddings, merge them, and measure how much each subset is retained."};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    std::string out_dir = "out";
    int n_threads = 0;
    std::string config_file;
    app.add_option("--out", out_dir, "Run directory for artifacts");
    app.add_option("--threads", n_threads, "Worker threads (0 = OpenMP default)")->envname("EMB_THREADS");
    app.add_option("--config", config_file, "Flat key=value file; command-line flags take precedence");

    TrainOptions train;
    auto* sc_train = app.add_subcommand("train", "Count co-occurrences and train GloVe on one scope");
    sc_train->add_option("--corpus", train.corpus, "One text file per subset, one document per line")
        ->required()->delimiter(',');
    sc_train->add_option("--scope", train.scope)
        ->check(CLI::IsMember({"small", "large", "joint", "upsampled-joint"}));
    sc_train->add_option("--small-label", train.small_label);
    sc_train->add_option("--large-label", train.large_label);
    sc_train->add_option("--min-count", train.min_count)->check(CLI::PositiveNumber);
    sc_train->add_option("--window", train.window)->check(CLI::Range(1, kMaxWindow));
    sc_train->add_option("--dim", train.glove.dim);
    sc_train->add_option("--epochs", train.glove.epochs);
    sc_train->add_option("--lr", train.glove.learning_rate);
    sc_train->add_option("--x-max", train.glove.x_max);
    sc_train->add_option("--alpha", train.glove.alpha);
    sc_train->add_option("--seed", train.glove.seed);
    sc_train->add_option("--export", train.export_mode)->check(CLI::IsMember({"sum", "word"}));

    MergeOptions merge;
    auto* sc_merge = app.add_subcommand("merge", "Combine two subset embeddings (avg, con, pca, wavg)");
    sc_merge->add_option("--method", merge.method)->required()->check(CLI::IsMember({"avg", "con", "pca", "wavg"}));
    sc_merge->add_option("--small", merge.small)->required();
    sc_merge->add_option("--large", merge.large)->required();
    sc_merge->add_option("--w-small", merge.w_small, "Override the inverse-proportion weight of the small subset");
    sc_merge->add_option("--pca-dim", merge.pca_dim);
    sc_merge->add_flag("--align", merge.align, "Rotate the large embedding onto the small one first");

    OptimizeOptions opt;
    auto* sc_opt = app.add_subcommand("optimize", "Balance the joint embedding towards W-AVG (projected Adam)");
    sc_opt->add_option("--joint", opt.joint)->required();
    sc_opt->add_option("--wavg", opt.wavg)->required();
    sc_opt->add_option("--cooc", opt.cooc)->required();
    sc_opt->add_option("--tau", opt.opt.tau);
    sc_opt->add_option("--steps", opt.opt.steps);
    sc_opt->add_option("--lr", opt.opt.learning_rate);
    sc_opt->add_option("--a-min", opt.opt.a_min);
    sc_opt->add_option("--a-max", opt.opt.a_max);
    sc_opt->add_option("--a-init", opt.opt.a_init);
    sc_opt->add_option("--x-max", opt.opt.x_max);
    sc_opt->add_option("--alpha", opt.opt.alpha);
    sc_opt->add_option("--seed", opt.opt.seed);

    ReportOptions measure;
    auto* sc_measure = app.add_subcommand("measure", "Neighbor-overlap influence of each subset");
    sc_measure->add_option("--small", measure.small)->required();
    sc_measure->add_option("--large", measure.large)->required();
    sc_measure->add_option("--embedding", measure.embeddings, "[label=]file")->delimiter(',');
    sc_measure->add_option("--n", measure.n_set)->delimiter(',');
    measure.subdir = "measure";

    AnalogyOptions analogy;
    auto* sc_analogy = app.add_subcommand("analogy", "Top-n analogy accuracy (3CosAdd)");
    sc_analogy->add_option("--embedding", analogy.embedding)->required();
    sc_analogy->add_option("--questions", analogy.questions)->required()->check(CLI::ExistingFile);
    sc_analogy->add_option("--csv", analogy.csv);

    ReportOptions report;
    auto* sc_report = app.add_subcommand("report", "Results table, neighbor-rank tables and interpolation sweep");
    sc_report->add_option("--small", report.small)->required();
    sc_report->add_option("--large", report.large)->required();
    sc_report->add_option("--embedding", report.embeddings, "[label=]file")->delimiter(',');
    sc_report->add_option("--questions", report.questions)->check(CLI::ExistingFile);
    sc_report->add_option("--words", report.words)->delimiter(',');
    sc_report->add_option("--rank-with", report.rank_others)->delimiter(',');
    sc_report->add_option("--rank-n", report.rank_n);
    sc_report->add_option("--rank-cutoff", report.rank_cutoff);
    sc_report->add_option("--sweep-a", report.sweep_a);
    sc_report->add_option("--sweep-b", report.sweep_b);
    sc_report->add_option("--grid", report.grid)->delimiter(',');
    sc_report->add_option("--n", report.n_set)->delimiter(',');

    SweepOptions sweep;
    auto* sc_sweep = app.add_subcommand("sweep", "J_n along x * a + (1 - x) * b");
    sc_sweep->add_option("--a", sweep.a)->required();
    sc_sweep->add_option("--b", sweep.b)->required();
    sc_sweep->add_option("--small", sweep.small)->required();
    sc_sweep->add_option("--large", sweep.large)->required();
    sc_sweep->add_option("--grid", sweep.grid)->delimiter(',');
    sc_sweep->add_option("--n", sweep.n_set)->delimiter(',');
    sc_sweep->add_option("--csv", sweep.csv);

    std::vector<std::string> args = input_args;
    try {
        // Config values fill in every flag of the chosen subcommand that the command line leaves out.
        const auto cfg_flag = std::find(args.begin(), args.end(), "--config");
        if (cfg_flag != args.end() && cfg_flag + 1 != args.end()) {
            const auto values = read_config(*(cfg_flag + 1));
            const auto sub_name = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
                return app.get_subcommand_no_throw(a) != nullptr;
            });
            if (sub_name != args.end()) {
                CLI::App* sub = app.get_subcommand(*sub_name);
                std::vector<std::string> extra;
                for (const auto& [key, value] : values) {
                    const std::string flag = "--" + key;
                    if (mentions(args, flag)) continue;
                    if (sub->get_option_no_throw(flag) != nullptr) {
                        extra.push_back(flag);
                        extra.push_back(value);
                    } else if (app.get_option_no_throw(flag) != nullptr && key != "config") {
                        args.insert(args.begin(), {flag, value});
                    }
                }
                args.insert(args.end(), extra.begin(), extra.end());
            }
        }
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (n_threads > 0) set_threads(n_threads);
        const OutputDir dir(out_dir);
        if (*sc_train) cmd_train(train, dir, out);
        else if (*sc_merge) cmd_merge(merge, dir, out);
        else if (*sc_opt) cmd_optimize(opt, dir, out);
        else if (*sc_measure) cmd_report(measure, dir, out, false);
        else if (*sc_analogy) cmd_analogy(analogy, dir, out);
        else if (*sc_report) cmd_report(report, dir, out, true);
        else if (*sc_sweep) cmd_sweep(sweep, dir, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace embal
