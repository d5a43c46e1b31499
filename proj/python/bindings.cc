#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "kert/config.h"
#include "kert/corpus.h"
#include "kert/error.h"
#include "kert/eval.h"
#include "kert/miner.h"
#include "kert/pipeline.h"
#include "kert/ranker.h"
#include "kert/topic_model.h"
#include "kert/version.h"

namespace py = pybind11;

namespace {

std::vector<std::vector<double>> to_rows(const kert::Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) rows[r].assign(m.row(r).begin(), m.row(r).end());
  return rows;
}

kert::StopwordSet to_stopwords(const std::vector<std::string>& words, bool lowercase) {
  kert::StopwordSet set;
  for (const auto& w : words) {
    auto tokens = kert::tokenize(w, {}, {lowercase, 1});
    set.insert(tokens.size() == 1 ? tokens.front() : w);
  }
  return set;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = R"pbdoc(
    Topical keyphrase extraction and ranking for short titles.

    The pipeline clusters title words with a background-topic LDA sampler,
    mines frequent order-free word sets per topic, and ranks them by
    coverage, purity, phraseness and completeness.
  )pbdoc";
  m.attr("__version__") = kert::kVersion;

  py::register_exception<kert::Error>(m, "KertError");

  py::class_<kert::Corpus>(m, "Corpus")
      .def_property_readonly("titles",
                             [](const kert::Corpus& c) {
                               std::vector<std::vector<kert::WordId>> out;
                               for (const auto& t : c.titles) out.push_back(t.tokens);
                               return out;
                             })
      .def_property_readonly("words", [](const kert::Corpus& c) { return c.vocabulary.words(); })
      .def_readonly("stopword_list_id", &kert::Corpus::stopword_list_id)
      .def_property_readonly("num_tokens", &kert::Corpus::num_tokens)
      .def("word", [](const kert::Corpus& c, kert::WordId id) { return c.vocabulary.word(id); })
      .def("word_id",
           [](const kert::Corpus& c, const std::string& w) { return c.vocabulary.find(w); })
      .def("__len__", &kert::Corpus::num_titles);

  m.def(
      "tokenize",
      [](const std::string& line, const std::vector<std::string>& stopwords, bool lowercase,
         std::size_t min_token_length) {
        return kert::tokenize(line, to_stopwords(stopwords, lowercase), {lowercase, min_token_length});
      },
      py::arg("line"), py::arg("stopwords") = std::vector<std::string>{},
      py::arg("lowercase") = true, py::arg("min_token_length") = 1);

  m.def(
      "corpus_from_lines",
      [](const std::vector<std::string>& lines, const std::vector<std::string>& stopwords,
         bool lowercase, std::size_t min_token_length) {
        return kert::corpus_from_lines(lines, to_stopwords(stopwords, lowercase),
                                       {lowercase, min_token_length});
      },
      py::arg("lines"), py::arg("stopwords") = std::vector<std::string>{},
      py::arg("lowercase") = true, py::arg("min_token_length") = 1);

  m.def(
      "load_corpus",
      [](const std::filesystem::path& path, const std::filesystem::path& stopwords,
         bool lowercase) { return kert::load_corpus(path, stopwords, {lowercase, 1}); },
      py::arg("path"), py::arg("stopwords") = std::filesystem::path(),
      py::arg("lowercase") = true);

  py::class_<kert::ModelConfig>(m, "ModelConfig")
      .def(py::init([](int topics, double alpha, double beta, double lambda, int burn_in,
                       int sweeps, std::uint64_t seed) {
             kert::ModelConfig c{topics, alpha, beta, lambda, burn_in, sweeps, seed};
             c.validate();
             return c;
           }),
           py::arg("topics") = 5, py::arg("alpha") = 1.0, py::arg("beta") = 0.07,
           py::arg("lam") = 0.1, py::arg("burn_in") = 200, py::arg("sweeps") = 500,
           py::arg("seed") = 1)
      .def_readwrite("topics", &kert::ModelConfig::topics)
      .def_readwrite("alpha", &kert::ModelConfig::alpha)
      .def_readwrite("beta", &kert::ModelConfig::beta)
      .def_readwrite("lam", &kert::ModelConfig::lambda)
      .def_readwrite("burn_in", &kert::ModelConfig::burn_in)
      .def_readwrite("sweeps", &kert::ModelConfig::total_sweeps)
      .def_readwrite("seed", &kert::ModelConfig::seed);

  py::class_<kert::LabeledCorpus>(m, "LabeledCorpus")
      .def_readonly("corpus", &kert::LabeledCorpus::corpus)
      .def_readonly("topics", &kert::LabeledCorpus::topics)
      .def_readonly("labels", &kert::LabeledCorpus::labels)
      .def_property_readonly("phi",
                             [](const kert::LabeledCorpus& l) -> py::object {
                               if (!l.phi_hat) return py::none();
                               return py::cast(to_rows(*l.phi_hat));
                             })
      .def_property_readonly("theta", [](const kert::LabeledCorpus& l) -> py::object {
        if (!l.theta_hat) return py::none();
        return py::cast(to_rows(*l.theta_hat));
      });

  m.def("run_inference", &kert::run_inference, py::arg("corpus"), py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<kert::TopicTransactions>(m, "TopicTransactions")
      .def_readonly("topic", &kert::TopicTransactions::topic)
      .def_property_readonly("d_t_size", &kert::TopicTransactions::d_t_size)
      .def_property_readonly("transactions", [](const kert::TopicTransactions& t) {
        std::vector<std::pair<std::size_t, kert::Phrase>> out;
        for (const auto& x : t.transactions) out.emplace_back(x.doc_id, x.words);
        return out;
      });

  m.def("build_transactions", &kert::build_transactions, py::arg("labeled"));

  py::class_<kert::CandidateKeyphrase>(m, "CandidateKeyphrase")
      .def(py::init<kert::Phrase, std::size_t, kert::TopicId>(), py::arg("words"),
           py::arg("freq"), py::arg("topic"))
      .def_readonly("words", &kert::CandidateKeyphrase::words)
      .def_readonly("freq", &kert::CandidateKeyphrase::freq)
      .def_readonly("topic", &kert::CandidateKeyphrase::topic)
      .def("__repr__", [](const kert::CandidateKeyphrase& c) {
        return "<CandidateKeyphrase topic=" + std::to_string(c.topic) +
               " size=" + std::to_string(c.words.size()) + " freq=" + std::to_string(c.freq) + ">";
      });

  m.def("mine_candidates", &kert::mine_candidates, py::arg("txns"), py::arg("min_support") = 5,
        py::arg("max_size") = 5);

  py::class_<kert::RankingConfig>(m, "RankingConfig")
      .def(py::init([](double gamma, double omega, const std::string& variant) {
             kert::RankingConfig c{gamma, omega, kert::parse_variant(variant)};
             c.validate();
             return c;
           }),
           py::arg("gamma") = 0.5, py::arg("omega") = 0.5, py::arg("variant") = "full")
      .def_readwrite("gamma", &kert::RankingConfig::gamma)
      .def_readwrite("omega", &kert::RankingConfig::omega)
      .def_property(
          "variant", [](const kert::RankingConfig& c) { return std::string(kert::variant_name(c.variant)); },
          [](kert::RankingConfig& c, const std::string& v) { c.variant = kert::parse_variant(v); });

  py::class_<kert::ScoredKeyphrase>(m, "ScoredKeyphrase")
      .def_readonly("candidate", &kert::ScoredKeyphrase::candidate)
      .def_readonly("surface", &kert::ScoredKeyphrase::surface)
      .def_readonly("cov", &kert::ScoredKeyphrase::cov)
      .def_readonly("pur", &kert::ScoredKeyphrase::pur)
      .def_readonly("phr", &kert::ScoredKeyphrase::phr)
      .def_readonly("com", &kert::ScoredKeyphrase::com)
      .def_readonly("score", &kert::ScoredKeyphrase::score)
      .def_readonly("filtered", &kert::ScoredKeyphrase::filtered)
      .def("__repr__", [](const kert::ScoredKeyphrase& s) {
        return "<ScoredKeyphrase '" + s.surface + "' score=" + std::to_string(s.score) + ">";
      });

  m.def(
      "rank_topic",
      [](const std::vector<kert::CandidateKeyphrase>& candidates,
         const std::vector<kert::TopicTransactions>& all_topics, const kert::RankingConfig& config,
         const kert::Corpus& corpus) {
        const kert::TopicContext context(all_topics);
        const kert::PhraseFormatter formatter(corpus);
        return kert::rank_topic(candidates, context, config, formatter);
      },
      py::arg("candidates"), py::arg("all_topics"), py::arg("config"), py::arg("corpus"),
      "Score and order one topic's candidates. all_topics comes from build_transactions.");

  m.def(
      "nkqm_at_k",
      [](const std::map<kert::TopicId, std::vector<std::string>>& rankings,
         const std::vector<std::tuple<kert::TopicId, std::string, std::string, int>>& judgments,
         std::size_t k) {
        std::vector<kert::JudgeScore> rows;
        for (const auto& [t, p, j, s] : judgments) rows.push_back({t, p, j, s});
        std::vector<kert::TopicRanking> lists;
        for (const auto& [t, phrases] : rankings) lists.push_back({t, phrases});
        return kert::nkqm_at_k(lists, kert::JudgeTable(std::move(rows)), k);
      },
      py::arg("rankings"), py::arg("judgments"), py::arg("k"),
      "rankings maps topic id to phrases best first; judgments are (topic, phrase, judge, score).");

  m.def(
      "mi_at_k",
      [](const std::vector<std::vector<kert::Phrase>>& rankings, const kert::Corpus& corpus,
         const std::vector<std::string>& categories, std::size_t k) {
        return kert::mi_at_k(rankings, corpus, kert::CategoryLabels{categories}, k);
      },
      py::arg("rankings"), py::arg("corpus"), py::arg("categories"), py::arg("k"));

  m.def(
      "run_pipeline",
      [](const std::map<std::string, std::string>& settings, bool resume) {
        kert::RunConfig config;
        config.output_dir = kert::default_output_dir();
        for (const auto& [k, v] : settings) config.set(k, v);
        py::gil_scoped_release release;
        return kert::run_pipeline(config, resume).dir;
      },
      py::arg("settings"), py::arg("resume") = false,
      "Run train, mine and rank. settings uses the config-file keys; returns the run directory.");
}
