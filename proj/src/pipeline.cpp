#include "corpusranker/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpusranker/container.hpp"
#include "corpusranker/errors.hpp"
#include "corpusranker/hash.hpp"
#include "corpusranker/ingest.hpp"
#include "corpusranker/sparse.hpp"

namespace corpusranker {

namespace fs = std::filesystem;

const char* model_name(ModelKind m) {
    switch (m) {
        case ModelKind::bow: return "bow";
        case ModelKind::tfidf: return "tfidf";
        case ModelKind::w2v_avg: return "w2v-avg";
        case ModelKind::w2v_tfidf: return "w2v-tfidf";
        case ModelKind::ext_avg: return "ext-avg";
    }
    return "bow";
}

ModelKind model_from_name(const std::string& name) {
    if (name == "bow") return ModelKind::bow;
    if (name == "tfidf") return ModelKind::tfidf;
    if (name == "w2v-avg") return ModelKind::w2v_avg;
    if (name == "w2v-tfidf") return ModelKind::w2v_tfidf;
    if (name == "ext-avg") return ModelKind::ext_avg;
    throw ConfigError("unknown model '" + name +
                      "' (expected bow, tfidf, w2v-avg, w2v-tfidf or ext-avg)");
}

namespace {

bool model_is_sparse(ModelKind m) { return m == ModelKind::bow || m == ModelKind::tfidf; }

bool model_needs_vocab(ModelKind m) {
    return m == ModelKind::bow || m == ModelKind::tfidf || m == ModelKind::w2v_tfidf;
}

bool model_has_table(ModelKind m) {
    return m == ModelKind::w2v_avg || m == ModelKind::w2v_tfidf || m == ModelKind::ext_avg;
}

std::string lemma_content(const LemmaExceptions& lemma) {
    std::vector<std::pair<std::string, std::string>> sorted(lemma.begin(), lemma.end());
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (const auto& [inflected, base] : sorted) {
        out += inflected;
        out += '\t';
        out += base;
        out += '\n';
    }
    return out;
}

std::string stopword_content(const std::unordered_set<std::string>& stopwords) {
    std::vector<std::string> sorted(stopwords.begin(), stopwords.end());
    std::sort(sorted.begin(), sorted.end());
    std::string out;
    for (const auto& s : sorted) {
        out += s;
        out += '\n';
    }
    return out;
}

void write_provenance_sidecar(const std::string& output_path, const RunConfig& cfg,
                              const std::string& hash) {
    std::ofstream out(output_path + ".provenance", std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write provenance sidecar for: " + output_path);
    }
    out << "config_hash=" << hash << '\n'
        << "model=" << model_name(cfg.model) << '\n'
        << "measure=" << measure_name(cfg.measure) << '\n'
        << "seed=" << cfg.seed << '\n'
        << "tool=corpus-ranker\n";
}

}  // namespace

std::string store_path(const RunConfig& cfg) {
    return (fs::path(cfg.workdir) / "store.crkr").string();
}

std::string index_path(const RunConfig& cfg) {
    return (fs::path(cfg.workdir) / (std::string("index-") + model_name(cfg.model) + ".crkr"))
        .string();
}

PreprocessConfig make_preprocess_config(const RunConfig& cfg) {
    PreprocessConfig pp;
    pp.ascii_filter = cfg.ascii_filter;
    if (!cfg.stopword_path.empty()) {
        pp.stopwords = load_stopword_file(cfg.stopword_path);
    }
    if (!cfg.lemma_path.empty()) {
        pp.lemma_exceptions = load_lemma_file(cfg.lemma_path);
    }
    if (cfg.reducer_explicit) {
        pp.reducer = cfg.reducer;
    } else {
        // frequency models benefit from lemmatization, embedding models do not
        pp.reducer = model_is_sparse(cfg.model) ? Reducer::lemmatize : Reducer::none;
    }
    return pp;
}

std::string config_hash(const RunConfig& cfg) {
    PreprocessConfig pp = make_preprocess_config(cfg);
    std::ostringstream s;
    s << "model=" << model_name(cfg.model) << ";reducer=" << reducer_name(pp.reducer)
      << ";ascii=" << pp.ascii_filter << ";stopwords=" << stopword_content_hash(pp.stopwords)
      << ";lemma=" << fnv1a64_hex(lemma_content(pp.lemma_exceptions))
      << ";dim=" << cfg.train.dimension << ";arch=" << architecture_name(cfg.train.architecture)
      << ";window=" << cfg.train.window << ";neg=" << cfg.train.negative_samples
      << ";epochs=" << cfg.train.epochs << ";lr=" << cfg.train.initial_learning_rate
      << ";min_lr=" << cfg.train.min_learning_rate << ";min_count=" << cfg.train.min_count
      << ";seed=" << cfg.seed << ";pool_oov=" << cfg.pooling.count_oov_in_denominator
      << ";pool_wsum=" << cfg.pooling.normalize_by_weight_sum
      << ";measure=" << measure_name(cfg.measure) << ";k=" << cfg.k << ";threshold="
      << (cfg.threshold.mode == ThresholdPolicy::Mode::fixed
              ? "fixed:" + std::to_string(cfg.threshold.fixed_value)
              : "auto")
      << ";embedding=" << cfg.embedding_path << ";combos=";
    for (auto combo : cfg.combos) s << combo_name(combo) << ',';
    return fnv1a64_hex(s.str());
}

CleaningCounts run_ingest(const RunConfig& cfg, std::ostream& log) {
    if (cfg.metadata_path.empty() || cfg.topics_path.empty() || cfg.qrels_path.empty()) {
        throw ConfigError("ingest requires --metadata, --topics and --qrels paths");
    }
    fs::create_directories(cfg.workdir);

    auto docs = parse_metadata(cfg.metadata_path);
    auto topics = parse_topics(cfg.topics_path);
    auto judgments = parse_qrels(cfg.qrels_path);

    // Deduplication always keys on the un-reduced normalization; stemming or
    // lemmatization happens downstream of cleaning.
    PreprocessConfig key_cfg = make_preprocess_config(cfg);
    key_cfg.reducer = Reducer::none;
    auto key = [&key_cfg](const std::string& title) { return normalized_key(title, key_cfg); };

    auto cleaned = clean_documents(std::move(docs), key, cfg.ascii_filter);

    CorpusStore store;
    store.documents = std::move(cleaned.documents);
    store.topics = std::move(topics);
    store.judgments = std::move(judgments);
    store.provenance.metadata_path = cfg.metadata_path;
    store.provenance.topics_path = cfg.topics_path;
    store.provenance.qrels_path = cfg.qrels_path;
    store.provenance.config_hash = config_hash(cfg);
    store.provenance.stopword_hash = stopword_content_hash(key_cfg.stopwords);
    store.provenance.cleaning = cleaned.counts;

    persist_store(store, store_path(cfg));

    const auto& c = cleaned.counts;
    log << "ingest: " << cfg.metadata_path << '\n'
        << "  parsed rows:              " << c.parsed << '\n'
        << "  duplicate ids removed:    " << c.removed_duplicate_ids << '\n'
        << "  null titles dropped:      " << c.dropped_null_titles << '\n'
        << "  duplicate titles removed: " << c.removed_duplicate_titles << '\n'
        << "  empty-normalized dropped: " << c.removed_empty_normalized << '\n'
        << "  non-ascii removed:        " << c.removed_non_ascii << '\n'
        << "  survivors:                " << c.survivors << '\n'
        << "  topics:                   " << store.topics.size() << '\n'
        << "  judgments:                " << store.judgments.size() << '\n'
        << "store written: " << store_path(cfg) << '\n';
    return c;
}

namespace {

constexpr std::string_view kMetaTag = "IMET";
constexpr std::string_view kStopTag = "STOP";
constexpr std::string_view kLemmaTag = "LEMX";
constexpr std::string_view kDocIdsTag = "DIDS";
constexpr std::string_view kVocabTag = "VOCB";
constexpr std::string_view kSparseTag = "SVEC";
constexpr std::string_view kDenseTag = "DVEC";
constexpr std::string_view kTableTag = "EMBT";

std::string encode_doc_ids(const std::vector<std::string>& ids) {
    ByteWriter w;
    w.u64(ids.size());
    for (const auto& id : ids) w.str(id);
    return w.take();
}

std::vector<std::string> decode_doc_ids(std::string_view payload) {
    ByteReader r(payload);
    std::uint64_t count = r.u64();
    std::vector<std::string> ids;
    ids.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) ids.push_back(r.str());
    return ids;
}

std::string encode_vocabulary(const Vocabulary& vocab) {
    ByteWriter w;
    w.u64(vocab.n_documents());
    w.u64(vocab.size());
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        w.str(vocab.token_at(i));
        w.u64(vocab.document_frequency(i));
    }
    return w.take();
}

Vocabulary decode_vocabulary(std::string_view payload) {
    ByteReader r(payload);
    std::uint64_t n_documents = r.u64();
    std::uint64_t count = r.u64();
    std::vector<std::string> tokens;
    std::vector<std::uint64_t> df;
    tokens.reserve(count);
    df.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        tokens.push_back(r.str());
        df.push_back(r.u64());
    }
    return Vocabulary(std::move(tokens), std::move(df), n_documents);
}

std::string encode_sparse_vectors(const std::vector<SparseVector>& vectors, std::uint32_t dim) {
    ByteWriter w;
    w.u32(dim);
    w.u64(vectors.size());
    for (const auto& v : vectors) {
        w.u32(static_cast<std::uint32_t>(v.entries.size()));
        for (const auto& [idx, val] : v.entries) {
            w.u32(idx);
            w.f64(val);
        }
    }
    return w.take();
}

std::vector<SparseVector> decode_sparse_vectors(std::string_view payload) {
    ByteReader r(payload);
    std::uint32_t dim = r.u32();
    std::uint64_t count = r.u64();
    std::vector<SparseVector> vectors;
    vectors.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        SparseVector v;
        v.dimension = dim;
        std::uint32_t nnz = r.u32();
        v.entries.reserve(nnz);
        for (std::uint32_t e = 0; e < nnz; ++e) {
            std::uint32_t idx = r.u32();
            double val = r.f64();
            v.entries.emplace_back(idx, val);
        }
        vectors.push_back(std::move(v));
    }
    return vectors;
}

std::string encode_dense_vectors(const std::vector<DenseVector>& vectors, std::uint32_t dim) {
    ByteWriter w;
    w.u32(dim);
    w.u64(vectors.size());
    for (const auto& v : vectors) {
        for (double x : v) w.f64(x);
    }
    return w.take();
}

std::vector<DenseVector> decode_dense_vectors(std::string_view payload) {
    ByteReader r(payload);
    std::uint32_t dim = r.u32();
    std::uint64_t count = r.u64();
    std::vector<DenseVector> vectors;
    vectors.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        DenseVector v(dim);
        for (std::uint32_t d = 0; d < dim; ++d) v[d] = r.f64();
        vectors.push_back(std::move(v));
    }
    return vectors;
}

struct LoadedIndex {
    ModelKind model = ModelKind::bow;
    PreprocessConfig preprocess;
    PoolingOptions pooling;
    std::vector<std::string> doc_ids;
    Vocabulary vocab;
    EmbeddingTable table;
    std::vector<SparseVector> sparse_titles;
    std::vector<DenseVector> dense_titles;
    std::string cfg_hash;
};

LoadedIndex load_index(const std::string& path) {
    auto reader = ContainerReader::from_file(path);
    LoadedIndex index;

    ByteReader meta_reader(reader.section(kMetaTag));
    auto meta = meta_reader.string_map();
    index.model = model_from_name(meta.at("model"));
    index.cfg_hash = meta.count("config_hash") ? meta.at("config_hash") : "";

    index.preprocess.reducer = reducer_from_name(meta.at("reducer"));
    index.preprocess.ascii_filter = meta.at("ascii_filter") == "1";
    index.preprocess.lowercase = meta.at("lowercase") == "1";
    index.preprocess.strip_non_alnum = meta.at("strip_non_alnum") == "1";
    index.pooling.count_oov_in_denominator = meta.at("pool_count_oov") == "1";
    index.pooling.normalize_by_weight_sum = meta.at("pool_weight_sum") == "1";

    {
        auto stop = reader.section(kStopTag);
        index.preprocess.stopwords.clear();
        std::istringstream in{std::string(stop)};
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) index.preprocess.stopwords.insert(line);
        }
    }
    {
        auto lemma = reader.section(kLemmaTag);
        index.preprocess.lemma_exceptions.clear();
        std::istringstream in{std::string(lemma)};
        std::string line;
        while (std::getline(in, line)) {
            auto tab = line.find('\t');
            if (tab != std::string::npos) {
                index.preprocess.lemma_exceptions[line.substr(0, tab)] = line.substr(tab + 1);
            }
        }
    }

    index.doc_ids = decode_doc_ids(reader.section(kDocIdsTag));
    if (reader.has(kVocabTag)) index.vocab = decode_vocabulary(reader.section(kVocabTag));
    if (reader.has(kTableTag)) index.table = decode_embedding_table(reader.section(kTableTag));
    if (reader.has(kSparseTag)) {
        index.sparse_titles = decode_sparse_vectors(reader.section(kSparseTag));
    }
    if (reader.has(kDenseTag)) index.dense_titles = decode_dense_vectors(reader.section(kDenseTag));
    return index;
}

// Vectorizes one token list under the index's model.
SparseVector sparse_vectorize(const LoadedIndex& index, const TokenList& tokens) {
    return index.model == ModelKind::bow ? bow_vector(tokens, index.vocab)
                                         : tfidf_vector(tokens, index.vocab);
}

DenseVector dense_vectorize(const LoadedIndex& index, const TokenList& tokens) {
    if (index.model == ModelKind::w2v_tfidf) {
        return tfidf_weighted_pool(tokens, index.table, index.vocab, index.pooling);
    }
    return average_pool(tokens, index.table, index.pooling);
}

std::vector<double> score_against_titles(const LoadedIndex& index, const TokenList& tokens,
                                         Measure measure, unsigned threads) {
    if (model_is_sparse(index.model)) {
        std::vector<SparseVector> topic{sparse_vectorize(index, tokens)};
        return score_all(topic, index.sparse_titles, measure, threads).values;
    }
    std::vector<DenseVector> topic{dense_vectorize(index, tokens)};
    return score_all(topic, index.dense_titles, measure, threads).values;
}

}  // namespace

void run_index(const RunConfig& cfg, std::ostream& log) {
    fs::create_directories(cfg.workdir);
    CorpusStore store = load_store(store_path(cfg));
    PreprocessConfig pp = make_preprocess_config(cfg);

    if (cfg.model == ModelKind::ext_avg && cfg.embedding_path.empty()) {
        throw ConfigError("model ext-avg requires --embedding <file>");
    }

    PreprocessedCorpus corpus = preprocess_corpus(store, pp);
    if (corpus.titles.empty()) {
        throw ValidationError("no titles survive preprocessing; nothing to index");
    }

    std::vector<TokenList> topic_lists;
    topic_lists.reserve(corpus.topics.size() * 3);
    for (const auto& t : corpus.topics) {
        topic_lists.push_back(t.query);
        topic_lists.push_back(t.question);
        topic_lists.push_back(t.narrative);
    }

    ContainerWriter writer;
    std::map<std::string, std::string> meta;
    meta["model"] = model_name(cfg.model);
    meta["reducer"] = reducer_name(pp.reducer);
    meta["ascii_filter"] = pp.ascii_filter ? "1" : "0";
    meta["lowercase"] = pp.lowercase ? "1" : "0";
    meta["strip_non_alnum"] = pp.strip_non_alnum ? "1" : "0";
    meta["pool_count_oov"] = cfg.pooling.count_oov_in_denominator ? "1" : "0";
    meta["pool_weight_sum"] = cfg.pooling.normalize_by_weight_sum ? "1" : "0";
    meta["stopword_hash"] = stopword_content_hash(pp.stopwords);
    meta["config_hash"] = config_hash(cfg);
    meta["seed"] = std::to_string(cfg.seed);
    meta["n_titles"] = std::to_string(corpus.titles.size());

    Vocabulary vocab;
    if (model_needs_vocab(cfg.model)) {
        vocab = build_vocabulary(corpus.titles, topic_lists);
        writer.add_section(kVocabTag, encode_vocabulary(vocab));
        dump_vocabulary(vocab,
                        (fs::path(cfg.workdir) / (std::string("vocab-") + model_name(cfg.model) +
                                                  ".tsv"))
                            .string());
    }

    EmbeddingTable table;
    if (cfg.model == ModelKind::w2v_avg || cfg.model == ModelKind::w2v_tfidf) {
        TrainConfig train = cfg.train;
        train.seed = cfg.seed;
        train.threads = cfg.threads;
        std::vector<TokenList> sentences = corpus.titles;
        sentences.insert(sentences.end(), topic_lists.begin(), topic_lists.end());
        TrainResult result = train_word2vec(sentences, train);
        table = std::move(result.table);
        for (std::size_t e = 0; e < result.epochs.size(); ++e) {
            log << "  epoch " << (e + 1) << ": mean pair loss "
                << result.epochs[e].mean_pair_loss << " over " << result.epochs[e].pairs
                << " pairs\n";
        }
        meta["dimension"] = std::to_string(table.dimension());
        meta["architecture"] = architecture_name(train.architecture);
        meta["window"] = std::to_string(train.window);
        meta["negative_samples"] = std::to_string(train.negative_samples);
        meta["epochs"] = std::to_string(train.epochs);
        meta["min_count"] = std::to_string(train.min_count);
    } else if (cfg.model == ModelKind::ext_avg) {
        table = load_embedding_table(cfg.embedding_path);
        meta["dimension"] = std::to_string(table.dimension());
        meta["embedding_source"] = cfg.embedding_path;
    }

    writer.add_section(kMetaTag, [&meta] {
        ByteWriter w;
        w.string_map(meta);
        return w.take();
    }());
    writer.add_section(kStopTag, stopword_content(pp.stopwords));
    writer.add_section(kLemmaTag, lemma_content(pp.lemma_exceptions));
    writer.add_section(kDocIdsTag, encode_doc_ids(corpus.doc_ids));

    if (model_is_sparse(cfg.model)) {
        std::vector<SparseVector> vectors;
        vectors.reserve(corpus.titles.size());
        for (const auto& tokens : corpus.titles) {
            vectors.push_back(cfg.model == ModelKind::bow ? bow_vector(tokens, vocab)
                                                          : tfidf_vector(tokens, vocab));
        }
        writer.add_section(kSparseTag,
                           encode_sparse_vectors(vectors, static_cast<std::uint32_t>(vocab.size())));
    } else {
        LoadedIndex scratch;
        scratch.model = cfg.model;
        scratch.vocab = vocab;
        scratch.table = table;
        scratch.pooling = cfg.pooling;
        std::vector<DenseVector> vectors;
        vectors.reserve(corpus.titles.size());
        for (const auto& tokens : corpus.titles) {
            vectors.push_back(dense_vectorize(scratch, tokens));
        }
        writer.add_section(kDenseTag, encode_dense_vectors(vectors, table.dimension()));
    }
    if (model_has_table(cfg.model)) {
        writer.add_section(kTableTag, encode_embedding_table(table));
    }

    writer.write_file(index_path(cfg));
    log << "index written: " << index_path(cfg) << '\n'
        << "  model: " << model_name(cfg.model) << '\n'
        << "  titles indexed: " << corpus.titles.size() << '\n'
        << "  ascii filtered: " << corpus.report.ascii_filtered << '\n'
        << "  empty after normalize: " << corpus.report.empty_after_normalize << '\n';
    if (model_needs_vocab(cfg.model)) {
        log << "  vocabulary size: " << vocab.size() << '\n';
    }
    if (model_has_table(cfg.model)) {
        log << "  embedding dimension: " << table.dimension() << '\n';
    }
}

RankedList run_query(const RunConfig& cfg, const QueryRequest& request, std::ostream& log) {
    if (!request.topic_id && !request.free_text) {
        throw ConfigError("query requires --topic <id> or --text <string>");
    }
    CorpusStore store = load_store(store_path(cfg));
    LoadedIndex index = load_index(index_path(cfg));

    int topic_id = 0;
    std::string raw_text;
    if (request.topic_id) {
        auto it = std::find_if(store.topics.begin(), store.topics.end(),
                               [&](const TopicRecord& t) { return t.topic_id == *request.topic_id; });
        if (it == store.topics.end()) {
            throw LookupError("unknown topic id " + std::to_string(*request.topic_id));
        }
        topic_id = it->topic_id;
        raw_text = compose_topic(*it, request.combo);
    } else {
        raw_text = *request.free_text;
    }

    TokenList tokens = normalize(raw_text, index.preprocess, SourceKind::combined);
    auto scores = score_against_titles(index, tokens, cfg.measure, cfg.threads);
    RankedList ranked = top_k(scores, index.doc_ids, cfg.k, cfg.measure, topic_id, request.combo);

    std::unordered_map<std::string, const DocumentRecord*> by_id;
    by_id.reserve(store.documents.size());
    for (const auto& doc : store.documents) by_id.emplace(doc.doc_id, &doc);

    log << "query [" << raw_text << "] model=" << model_name(cfg.model)
        << " measure=" << measure_name(cfg.measure) << " k=" << cfg.k << '\n';
    for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
        const auto& e = ranked.entries[i];
        auto it = by_id.find(e.doc_id);
        log << "  " << (i + 1) << ". " << e.doc_id << "  " << e.score << "  "
            << (it == by_id.end() ? "" : it->second->title) << '\n';
    }

    fs::create_directories(cfg.workdir);
    std::string name = request.topic_id ? "ranked_topic-" + std::to_string(topic_id) + "_" +
                                              combo_name(request.combo) + "_" +
                                              model_name(cfg.model) + ".csv"
                                        : std::string("ranked_text_") + model_name(cfg.model) +
                                              ".csv";
    std::string out_path = (fs::path(cfg.workdir) / name).string();
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write ranked list: " + out_path);
    }
    write_ranked_list_csv(ranked, raw_text, store.documents, out);
    write_provenance_sidecar(out_path, cfg, index.cfg_hash.empty() ? config_hash(cfg)
                                                                   : index.cfg_hash);
    log << "ranked list written: " << out_path << '\n';
    return ranked;
}

EvalReport run_evaluate(const RunConfig& cfg, std::ostream& log) {
    CorpusStore store = load_store(store_path(cfg));
    LoadedIndex index = load_index(index_path(cfg));
    if (store.judgments.empty()) {
        throw EmptyEvaluationError("qrels contain no judgments");
    }

    std::vector<int> topic_ids;
    topic_ids.reserve(store.topics.size());
    for (const auto& t : store.topics) topic_ids.push_back(t.topic_id);

    std::vector<std::pair<TopicFieldCombo, ScoreMatrix>> combo_scores;
    for (TopicFieldCombo combo : cfg.combos) {
        ScoreMatrix matrix;
        if (model_is_sparse(index.model)) {
            std::vector<SparseVector> topic_vectors;
            topic_vectors.reserve(store.topics.size());
            for (const auto& t : store.topics) {
                TokenList tokens =
                    normalize(compose_topic(t, combo), index.preprocess, SourceKind::combined);
                topic_vectors.push_back(sparse_vectorize(index, tokens));
            }
            matrix = score_all(topic_vectors, index.sparse_titles, cfg.measure, cfg.threads);
        } else {
            std::vector<DenseVector> topic_vectors;
            topic_vectors.reserve(store.topics.size());
            for (const auto& t : store.topics) {
                TokenList tokens =
                    normalize(compose_topic(t, combo), index.preprocess, SourceKind::combined);
                topic_vectors.push_back(dense_vectorize(index, tokens));
            }
            matrix = score_all(topic_vectors, index.dense_titles, cfg.measure, cfg.threads);
        }
        combo_scores.emplace_back(combo, std::move(matrix));
    }

    EvalReport report = evaluate_run(model_name(cfg.model), index.doc_ids, topic_ids, combo_scores,
                                     store.judgments, cfg.threshold);
    report.config_hash = config_hash(cfg);
    report.seed = cfg.seed;

    bool any_pairs = false;
    for (const auto& row : report.rows) {
        if (!row.empty) any_pairs = true;
    }
    if (!any_pairs) {
        throw EmptyEvaluationError("no judged pair survives cleaning; nothing to evaluate");
    }

    fs::create_directories(cfg.workdir);
    std::string report_path =
        (fs::path(cfg.workdir) / (std::string("report-") + model_name(cfg.model) + ".csv"))
            .string();
    {
        std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write report: " + report_path);
        }
        write_eval_report_csv(report, out);
    }
    write_provenance_sidecar(report_path, cfg, report.config_hash);

    auto topk_rows = topk_precision(index.doc_ids, topic_ids, combo_scores, store.judgments,
                                    cfg.k, cfg.measure);
    std::string topk_path =
        (fs::path(cfg.workdir) / (std::string("report-") + model_name(cfg.model) + "-topk.csv"))
            .string();
    {
        std::ofstream out(topk_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write top-k report: " + topk_path);
        }
        write_topk_precision_csv(topk_rows, out);
    }
    write_provenance_sidecar(topk_path, cfg, report.config_hash);

    log << "evaluation report written: " << report_path << '\n';
    for (const auto& row : report.rows) {
        log << "  " << combo_report_label(row.combo) << ": ";
        if (row.empty) {
            log << "no judged pairs\n";
            continue;
        }
        log << "threshold " << row.threshold << ", accuracy ";
        if (row.metrics.accuracy.defined) {
            log << row.metrics.accuracy.value;
        } else {
            log << "undefined";
        }
        log << " (tp " << row.cm.tp << ", fp " << row.cm.fp << ", tn " << row.cm.tn << ", fn "
            << row.cm.fn << ")\n";
    }
    if (report.judged_pairs_missing) {
        log << "  judged pairs without a surviving document: " << report.judged_pairs_missing
            << '\n';
    }
    return report;
}

void run_heatmap(const RunConfig& cfg, const HeatmapRequest& request, std::ostream& log) {
    CorpusStore store = load_store(store_path(cfg));
    LoadedIndex index = load_index(index_path(cfg));

    auto topic_it = std::find_if(store.topics.begin(), store.topics.end(),
                                 [&](const TopicRecord& t) { return t.topic_id == request.topic_id; });
    if (topic_it == store.topics.end()) {
        throw LookupError("unknown topic id " + std::to_string(request.topic_id));
    }
    auto doc_it = std::find_if(store.documents.begin(), store.documents.end(),
                               [&](const DocumentRecord& d) { return d.doc_id == request.doc_id; });
    if (doc_it == store.documents.end()) {
        throw LookupError("unknown document id '" + request.doc_id + "'");
    }

    TokenList title = normalize(doc_it->title, index.preprocess, SourceKind::title);
    TokenList topic = normalize(compose_topic(*topic_it, request.combo), index.preprocess,
                                SourceKind::combined);

    LabeledMatrix matrix;
    const char* kind_name = request.kind == HeatmapKind::bow ? "bow" : "embedding";
    if (request.kind == HeatmapKind::bow) {
        matrix = heatmap_bow(title, topic);
    } else {
        if (index.table.size() == 0) {
            throw ConfigError("embedding heatmap requires an embedding-backed index (w2v/ext)");
        }
        matrix = heatmap_word_cosine(title, topic, index.table);
    }
    if (matrix.empty()) {
        log << "warning: empty heatmap matrix (no tokens on one side)\n";
    }

    fs::create_directories(cfg.workdir);
    std::string out_path =
        (fs::path(cfg.workdir) / ("heatmap_" + std::string(kind_name) + "_topic-" +
                                  std::to_string(request.topic_id) + "_" + request.doc_id + ".csv"))
            .string();
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write heatmap: " + out_path);
    }
    write_labeled_matrix_csv(matrix, out);
    write_provenance_sidecar(out_path, cfg, index.cfg_hash.empty() ? config_hash(cfg)
                                                                   : index.cfg_hash);
    log << "heatmap written: " << out_path << '\n';
}

}  // namespace corpusranker
