#include "corpusranker/lemmatize.hpp"

namespace corpusranker {

// Irregular inflections plus identity entries that block the suffix rules.
// Identical content ships as data/lemma_exceptions.tsv; a unit test keeps the
// two in sync.
const LemmaExceptions& builtin_lemma_exceptions() {
    static const LemmaExceptions exceptions = [] {
        static constexpr std::pair<const char*, const char*> kPairs[] = {
            {"aches", "ache"},
            {"achieved", "achieve"},
            {"achieving", "achieve"},
            {"added", "add"},
            {"adding", "add"},
            {"aids", "aids"},
            {"alias", "alias"},
            {"always", "always"},
            {"analysed", "analyse"},
            {"analyses", "analysis"},
            {"analyzed", "analyze"},
            {"appendices", "appendix"},
            {"approved", "approve"},
            {"associated", "associate"},
            {"atlas", "atlas"},
            {"bacteria", "bacteria"},
            {"became", "become"},
            {"began", "begin"},
            {"begun", "begin"},
            {"besides", "besides"},
            {"bias", "bias"},
            {"bought", "buy"},
            {"brought", "bring"},
            {"built", "build"},
            {"buses", "bus"},
            {"caches", "cache"},
            {"came", "come"},
            {"canvas", "canvas"},
            {"caught", "catch"},
            {"caused", "cause"},
            {"causing", "cause"},
            {"children", "child"},
            {"chose", "choose"},
            {"chosen", "choose"},
            {"compared", "compare"},
            {"comparing", "compare"},
            {"controlled", "control"},
            {"controlling", "control"},
            {"coronaviruses", "coronavirus"},
            {"crises", "crisis"},
            {"criteria", "criterion"},
            {"decreased", "decrease"},
            {"decreasing", "decrease"},
            {"demonstrated", "demonstrate"},
            {"described", "describe"},
            {"determined", "determine"},
            {"diabetes", "diabetes"},
            {"diagnoses", "diagnosis"},
            {"died", "die"},
            {"drawn", "draw"},
            {"drew", "draw"},
            {"emerged", "emerge"},
            {"emerging", "emerge"},
            {"emphases", "emphasis"},
            {"estimated", "estimate"},
            {"evaluated", "evaluate"},
            {"examined", "examine"},
            {"fallen", "fall"},
            {"feet", "foot"},
            {"fell", "fall"},
            {"felt", "feel"},
            {"fetuses", "fetus"},
            {"foes", "foe"},
            {"found", "find"},
            {"fungi", "fungus"},
            {"gases", "gas"},
            {"gave", "give"},
            {"geese", "goose"},
            {"given", "give"},
            {"gone", "go"},
            {"grew", "grow"},
            {"grown", "grow"},
            {"halves", "half"},
            {"headaches", "headache"},
            {"held", "hold"},
            {"hypotheses", "hypothesis"},
            {"improved", "improve"},
            {"improving", "improve"},
            {"included", "include"},
            {"including", "include"},
            {"increased", "increase"},
            {"increasing", "increase"},
            {"indicated", "indicate"},
            {"indices", "index"},
            {"induced", "induce"},
            {"involved", "involve"},
            {"involving", "involve"},
            {"isolated", "isolate"},
            {"kept", "keep"},
            {"knew", "know"},
            {"knives", "knife"},
            {"known", "know"},
            {"leaves", "leaf"},
            {"led", "lead"},
            {"left", "leave"},
            {"lenses", "lens"},
            {"lied", "lie"},
            {"lives", "life"},
            {"lost", "lose"},
            {"made", "make"},
            {"matrices", "matrix"},
            {"meant", "mean"},
            {"measles", "measles"},
            {"measured", "measure"},
            {"men", "man"},
            {"mers", "mers"},
            {"met", "meet"},
            {"mice", "mouse"},
            {"mustaches", "mustache"},
            {"news", "news"},
            {"niches", "niche"},
            {"nuclei", "nucleus"},
            {"observed", "observe"},
            {"paid", "pay"},
            {"pancreas", "pancreas"},
            {"perhaps", "perhaps"},
            {"phenomena", "phenomenon"},
            {"prognoses", "prognosis"},
            {"produced", "produce"},
            {"proposed", "propose"},
            {"provided", "provide"},
            {"providing", "provide"},
            {"rabies", "rabies"},
            {"ran", "run"},
            {"received", "receive"},
            {"reduced", "reduce"},
            {"reducing", "reduce"},
            {"related", "relate"},
            {"released", "release"},
            {"releasing", "release"},
            {"removed", "remove"},
            {"removing", "remove"},
            {"required", "require"},
            {"requiring", "require"},
            {"risen", "rise"},
            {"rose", "rise"},
            {"said", "say"},
            {"sars", "sars"},
            {"saw", "see"},
            {"seen", "see"},
            {"sent", "send"},
            {"series", "series"},
            {"shelves", "shelf"},
            {"shoes", "shoe"},
            {"showed", "show"},
            {"shown", "show"},
            {"sometimes", "sometimes"},
            {"sought", "seek"},
            {"species", "species"},
            {"spent", "spend"},
            {"spoke", "speak"},
            {"spoken", "speak"},
            {"statuses", "status"},
            {"stimuli", "stimulus"},
            {"stood", "stand"},
            {"syntheses", "synthesis"},
            {"taken", "take"},
            {"taught", "teach"},
            {"teeth", "tooth"},
            {"theses", "thesis"},
            {"thought", "think"},
            {"threw", "throw"},
            {"thrown", "throw"},
            {"toes", "toe"},
            {"told", "tell"},
            {"took", "take"},
            {"understood", "understand"},
            {"used", "use"},
            {"using", "use"},
            {"vaccinated", "vaccinate"},
            {"viruses", "virus"},
            {"went", "go"},
            {"whereas", "whereas"},
            {"wives", "wife"},
            {"wolves", "wolf"},
            {"women", "woman"},
            {"written", "write"},
            {"wrote", "write"},
        };
        LemmaExceptions map;
        map.reserve(std::size(kPairs));
        for (const auto& [inflected, lemma] : kPairs) {
            map.emplace(inflected, lemma);
        }
        return map;
    }();
    return exceptions;
}

}  // namespace corpusranker
