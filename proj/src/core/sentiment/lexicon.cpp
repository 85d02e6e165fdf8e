#include "core/sentiment/lexicon.hpp"

#include <fstream>

#include "core/util/errors.hpp"
#include "core/util/textu.hpp"

namespace dhms::sentiment {

std::string to_string(Label l) {
    switch (l) {
        case Label::Negative: return "negative";
        case Label::Neutral: return "neutral";
        case Label::Positive: return "positive";
    }
    return "neutral";
}

Lexicon::Lexicon(std::unordered_map<std::string, int> entries,
                 std::unordered_set<std::string> stopwords, double neutral_band)
    : entries_(std::move(entries)), stopwords_(std::move(stopwords)), neutral_band_(neutral_band) {
    for (const auto& [term, polarity] : entries_)
        if (polarity != 1 && polarity != -1)
            throw ValidationError("lexicon term '" + term + "' has polarity outside {-1,+1}");
    // Negators must survive stop-word filtering or negation never fires.
    for (const char* neg : {"not", "no", "never"}) stopwords_.erase(neg);
}

Lexicon Lexicon::load(const std::string& lexicon_path, const std::string& stopwords_path,
                      double neutral_band) {
    std::unordered_map<std::string, int> entries;
    std::ifstream lex(lexicon_path);
    if (!lex) throw IoError("cannot open lexicon file: " + lexicon_path);
    std::string line;
    int lineno = 0;
    while (std::getline(lex, line)) {
        ++lineno;
        std::string t = util::trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto tab = t.find('\t');
        if (tab == std::string::npos)
            throw ValidationError(lexicon_path + ":" + std::to_string(lineno) +
                                  ": expected term<TAB>polarity");
        std::string term = util::to_lower(util::trim(t.substr(0, tab)));
        std::string pol = util::trim(t.substr(tab + 1));
        if (pol != "1" && pol != "+1" && pol != "-1")
            throw ValidationError(lexicon_path + ":" + std::to_string(lineno) +
                                  ": polarity must be -1 or +1, got '" + pol + "'");
        entries[term] = pol == "-1" ? -1 : 1;
    }

    std::unordered_set<std::string> stopwords;
    std::ifstream stops(stopwords_path);
    if (!stops) throw IoError("cannot open stop-word file: " + stopwords_path);
    while (std::getline(stops, line)) {
        std::string t = util::trim(line);
        if (t.empty() || t[0] == '#') continue;
        stopwords.insert(util::to_lower(t));
    }
    return Lexicon(std::move(entries), std::move(stopwords), neutral_band);
}

SentimentResult Lexicon::score_text(const std::string& text) const {
    std::vector<std::string> raw = util::tokenize(text);
    std::vector<std::string> tokens;
    tokens.reserve(raw.size());
    for (std::string& t : raw)
        if (!stopwords_.count(t)) tokens.push_back(std::move(t));

    int polarity_sum = 0;
    std::size_t matched = 0;
    bool negate_next = false;
    for (const std::string& t : tokens) {
        if (t == "not" || t == "no" || t == "never") {
            negate_next = true;
            continue;
        }
        auto it = entries_.find(t);
        if (it == entries_.end()) continue;
        int polarity = it->second;
        if (negate_next) {
            polarity = -polarity;
            negate_next = false;
        }
        polarity_sum += polarity;
        ++matched;
    }

    SentimentResult r;
    r.score = static_cast<double>(polarity_sum) / static_cast<double>(std::max<std::size_t>(1, matched));
    r.confidence = tokens.empty()
                       ? 0.0
                       : static_cast<double>(matched) / static_cast<double>(tokens.size());
    if (r.score < -neutral_band_)
        r.label = Label::Negative;
    else if (r.score > neutral_band_)
        r.label = Label::Positive;
    else
        r.label = Label::Neutral;
    return r;
}

}  // namespace dhms::sentiment
