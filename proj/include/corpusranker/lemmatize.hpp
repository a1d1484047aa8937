#pragma once

#include <string>
#include <unordered_map>

namespace corpusranker {

enum class PosHint { noun, verb, auto_detect };

using LemmaExceptions = std::unordered_map<std::string, std::string>;

// Irregular forms compiled into the binary; identical content ships as
// data/lemma_exceptions.tsv. Identity entries block the suffix rules for
// words like "species" or "sars".
const LemmaExceptions& builtin_lemma_exceptions();

// Lemma dictionary file: UTF-8, one "inflected<TAB>lemma" pair per line.
LemmaExceptions load_lemma_file(const std::string& path);

// Dictionary lookup plus deterministic suffix rules for regular plural and
// verb inflections. Unknown shapes pass through unchanged; never empty for
// non-empty input.
std::string lemmatize(const std::string& token, PosHint hint = PosHint::auto_detect);
std::string lemmatize(const std::string& token, PosHint hint, const LemmaExceptions& exceptions);

}  // namespace corpusranker
