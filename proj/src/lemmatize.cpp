#include "corpusranker/lemmatize.hpp"

#include <fstream>
#include <sstream>

#include "corpusranker/errors.hpp"

namespace corpusranker {

namespace {

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool is_cons(const std::string& w, std::size_t i) {
    char c = w[i];
    if (is_vowel(c)) return false;
    if (c == 'y') return i == 0 ? true : !is_cons(w, i - 1);
    return true;
}

// consonant-vowel-consonant ending (last consonant not w/x/y); the signal
// that the base probably dropped a final 'e' before inflection.
bool ends_cvc(const std::string& w) {
    std::size_t n = w.size();
    if (n < 3) return false;
    if (!is_cons(w, n - 1) || is_cons(w, n - 2) || !is_cons(w, n - 3)) return false;
    char c = w[n - 1];
    return c != 'w' && c != 'x' && c != 'y';
}

// Porter-style measure: number of vowel->consonant transitions.
int measure(const std::string& w) {
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        bool vowel = !is_cons(w, i);
        if (prev_vowel && !vowel) ++m;
        prev_vowel = vowel;
    }
    return m;
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Undo consonant doubling (running -> run) except for letters that commonly
// stay doubled in the base (fall, miss, fizz).
void undouble(std::string& w) {
    std::size_t n = w.size();
    if (n >= 2 && w[n - 1] == w[n - 2] && is_cons(w, n - 1)) {
        char c = w[n - 1];
        if (c != 'l' && c != 's' && c != 'z') w.pop_back();
    }
}

std::string strip_ing_or_ed(const std::string& token, std::string_view suffix) {
    std::string base = token.substr(0, token.size() - suffix.size());
    std::size_t before = base.size();
    undouble(base);
    bool undoubled = base.size() != before;
    if (!undoubled && ends_cvc(base) && measure(base) == 1) {
        base.push_back('e');
    }
    return base;
}

// Regular plural / 3rd-person-singular endings.
bool apply_s_rules(const std::string& token, std::string& out) {
    if (token.size() >= 5 && ends_with(token, "ies")) {
        out = token.substr(0, token.size() - 3) + "y";
        return true;
    }
    if (token.size() >= 4 &&
        (ends_with(token, "xes") || ends_with(token, "ches") || ends_with(token, "shes") ||
         ends_with(token, "sses") || ends_with(token, "oes"))) {
        out = token.substr(0, token.size() - 2);
        return true;
    }
    if (token.size() >= 4 && token.back() == 's' && !ends_with(token, "ss") &&
        !ends_with(token, "us") && !ends_with(token, "is")) {
        out = token.substr(0, token.size() - 1);
        return true;
    }
    return false;
}

bool apply_verb_rules(const std::string& token, std::string& out) {
    if (token.size() >= 4 && ends_with(token, "ied")) {
        out = token.substr(0, token.size() - 3) + "y";
        return true;
    }
    if (token.size() >= 5 && ends_with(token, "ing")) {
        std::string base = strip_ing_or_ed(token, "ing");
        if (base.size() >= 2) {
            out = std::move(base);
            return true;
        }
    }
    if (token.size() >= 4 && ends_with(token, "ed")) {
        std::string base = strip_ing_or_ed(token, "ed");
        if (base.size() >= 2) {
            out = std::move(base);
            return true;
        }
    }
    return false;
}

}  // namespace

LemmaExceptions load_lemma_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open lemma dictionary: " + path);
    }
    LemmaExceptions out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
            throw FormatError("lemma dictionary line " + std::to_string(lineno) +
                              " is not 'inflected<TAB>lemma': " + path);
        }
        out[line.substr(0, tab)] = line.substr(tab + 1);
    }
    return out;
}

std::string lemmatize(const std::string& token, PosHint hint) {
    return lemmatize(token, hint, builtin_lemma_exceptions());
}

std::string lemmatize(const std::string& token, PosHint hint, const LemmaExceptions& exceptions) {
    if (token.empty()) return token;

    if (auto it = exceptions.find(token); it != exceptions.end()) {
        return it->second;
    }

    std::string out;
    if (hint == PosHint::noun || hint == PosHint::auto_detect) {
        if (apply_s_rules(token, out)) return out;
    }
    if (hint == PosHint::verb || hint == PosHint::auto_detect) {
        if (hint == PosHint::verb && apply_s_rules(token, out)) return out;
        if (apply_verb_rules(token, out)) return out;
    }
    return token;
}

}  // namespace corpusranker
