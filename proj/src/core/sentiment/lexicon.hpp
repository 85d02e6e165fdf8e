#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dhms::sentiment {

enum class Label { Negative, Neutral, Positive };

std::string to_string(Label l);

struct SentimentResult {
    double score = 0.0;       // in [-1, 1]
    Label label = Label::Neutral;
    double confidence = 0.0;  // matched tokens / total tokens
};

// Deterministic lexicon scorer. Tokens are lowercased with punctuation
// stripped; stop-words are dropped; "not" / "no" / "never" flip the polarity
// of the next lexicon hit. Score is the mean polarity over matched tokens.
class Lexicon {
  public:
    // Entries: term -> polarity (-1 or +1).
    Lexicon(std::unordered_map<std::string, int> entries,
            std::unordered_set<std::string> stopwords, double neutral_band = 0.1);

    // File format: one "term<TAB>polarity" per line, polarity -1 or +1;
    // stop-word file is one term per line. '#' starts a comment.
    static Lexicon load(const std::string& lexicon_path, const std::string& stopwords_path,
                        double neutral_band = 0.1);

    SentimentResult score_text(const std::string& text) const;

    std::size_t term_count() const { return entries_.size(); }

  private:
    std::unordered_map<std::string, int> entries_;
    std::unordered_set<std::string> stopwords_;
    double neutral_band_;
};

}  // namespace dhms::sentiment
