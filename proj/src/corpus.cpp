#include "embal/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "embal/rng.hpp"

namespace embal {

std::string hex64(std::uint64_t value) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << value;
    return out.str();
}

DocumentSet::DocumentSet(std::vector<Document> documents) {
    documents_.reserve(documents.size());
    for (auto& doc : documents) add(std::move(doc));
}

void DocumentSet::add(Document doc) {
    if (doc.label.empty()) throw InvalidArgument("document '" + doc.id + "' has an empty subset label");
    if (!ids_.insert(doc.id).second) throw InvalidArgument("duplicate document id '" + doc.id + "'");
    documents_.push_back(std::move(doc));
}

std::set<std::string> DocumentSet::labels() const {
    std::set<std::string> out;
    for (const auto& doc : documents_) out.insert(doc.label);
    return out;
}

std::size_t DocumentSet::count(std::string_view label) const {
    return static_cast<std::size_t>(std::count_if(documents_.begin(), documents_.end(),
                                                  [&](const Document& d) { return d.label == label; }));
}

DocumentSet DocumentSet::subset(std::string_view label) const {
    DocumentSet out;
    for (const auto& doc : documents_)
        if (doc.label == label) out.add(doc);
    return out;
}

DocumentSet read_corpus(const std::vector<std::filesystem::path>& files) {
    DocumentSet docs;
    std::set<std::string> seen;
    for (const auto& path : files) {
        std::ifstream in(path);
        if (!in) throw FormatError("cannot read corpus file " + path.string());
        const std::string label = path.stem().string();
        if (!seen.insert(label).second) throw InvalidArgument("duplicate subset label '" + label + "'");
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            docs.add({label + ":" + std::to_string(lineno), label, std::move(line)});
        }
    }
    return docs;
}

namespace {

// Bytes >= 0x80 are kept inside tokens so UTF-8 words survive intact.
bool is_token_byte(unsigned char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (const char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (is_token_byte(c)) {
            current.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<std::uint64_t> counts,
                       std::uint64_t min_count)
    : tokens_(std::move(tokens)), counts_(std::move(counts)), min_count_(min_count) {
    Fnv1a h;
    index_.reserve(tokens_.size());
    for (std::size_t k = 0; k < tokens_.size(); ++k) {
        if (!index_.emplace(tokens_[k], static_cast<WordId>(k)).second)
            throw InvalidArgument("duplicate token '" + tokens_[k] + "' in vocabulary");
        h.update(tokens_[k]);
    }
    hash_ = h.digest();
}

Vocabulary Vocabulary::from_tokens(std::vector<std::string> tokens) {
    std::vector<std::uint64_t> counts(tokens.size(), 0);
    return Vocabulary(std::move(tokens), std::move(counts), 0);
}

WordId Vocabulary::find(std::string_view token) const {
    const auto it = index_.find(std::string(token));
    return it == index_.end() ? npos : it->second;
}

void Vocabulary::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path.string());
    out << "min_count " << min_count_ << '\n';
    for (std::size_t k = 0; k < tokens_.size(); ++k) out << tokens_[k] << ' ' << counts_[k] << '\n';
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read " + path.string());
    std::string key;
    std::uint64_t min_count = 0;
    if (!(in >> key >> min_count) || key != "min_count") throw FormatError(path.string() + ": missing min_count header");
    std::vector<std::string> tokens;
    std::vector<std::uint64_t> counts;
    std::string token;
    std::uint64_t count = 0;
    while (in >> token >> count) {
        tokens.push_back(token);
        counts.push_back(count);
    }
    return Vocabulary(std::move(tokens), std::move(counts), min_count);
}

Vocabulary build_vocabulary(const DocumentSet& docs, std::uint64_t min_count) {
    if (min_count < 1) throw InvalidArgument("min_count must be >= 1");
    std::unordered_map<std::string, std::uint64_t> freq;
    for (const auto& doc : docs.documents())
        for (auto& tok : tokenize(doc.text)) ++freq[std::move(tok)];

    std::vector<std::pair<std::string, std::uint64_t>> kept;
    for (auto& [tok, n] : freq)
        if (n >= min_count) kept.emplace_back(tok, n);
    if (kept.empty())
        throw InvalidArgument("empty vocabulary: no token occurs at least " + std::to_string(min_count) + " times");
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });

    std::vector<std::string> tokens;
    std::vector<std::uint64_t> counts;
    tokens.reserve(kept.size());
    counts.reserve(kept.size());
    for (auto& [tok, n] : kept) {
        tokens.push_back(std::move(tok));
        counts.push_back(n);
    }
    return Vocabulary(std::move(tokens), std::move(counts), min_count);
}

DocumentSet upsample(const DocumentSet& docs, std::string_view label, std::size_t target_count,
                     std::uint64_t seed) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < docs.size(); ++k)
        if (docs.documents()[k].label == label) members.push_back(k);
    if (members.empty()) throw InvalidArgument("unknown subset label '" + std::string(label) + "'");
    if (target_count < members.size())
        throw InvalidArgument("upsample target " + std::to_string(target_count) + " is below the current count " +
                              std::to_string(members.size()));

    const std::size_t copies = target_count / members.size();
    const std::size_t remainder = target_count % members.size();

    DocumentSet out(docs.documents());
    auto add_copy = [&](std::size_t member, std::size_t copy_no) {
        Document doc = docs.documents()[member];
        doc.id += "#" + std::to_string(copy_no);
        out.add(std::move(doc));
    };
    for (std::size_t c = 1; c < copies; ++c)
        for (const auto m : members) add_copy(m, c);

    if (remainder > 0) {
        Rng rng(seed);
        std::vector<std::size_t> pool = members;
        shuffle(pool, rng);
        pool.resize(remainder);
        std::sort(pool.begin(), pool.end());
        for (const auto m : pool) add_copy(m, copies);
    }
    return out;
}

std::vector<WordId> encode(const Vocabulary& vocab, std::string_view text) {
    std::vector<WordId> ids;
    for (const auto& tok : tokenize(text)) ids.push_back(vocab.find(tok));
    return ids;
}

}  // namespace embal
