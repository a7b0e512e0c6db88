// Writes the bundled synthetic fixture: word-lists, VAD and Binder-style
// rating tables, word vectors, a JSON-lines news corpus and a macro panel.
//
//   make_fixture <output-dir>

#include "affect/calendar.hpp"
#include "affect/rng.hpp"
#include "affect/text_io.hpp"

#include <fmt/format.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace {

using affect::Rng;

const std::vector<std::string> kBinderFeatures{
    "Vision",   "Bright",    "Dark",         "Color",    "Pattern",  "Large",     "Small",     "Motion",
    "Biomotion", "Fast",     "Slow",         "Shape",    "Complexity", "Face",    "Body",      "Touch",
    "Temperature", "Texture", "Weight",      "Pain",     "Audition", "Loud",      "Low",       "High",
    "Sound",    "Music",     "Speech",       "Taste",    "Smell",    "Head",      "UpperLimb", "LowerLimb",
    "Practice", "Landmark",  "Path",         "Scene",    "Near",     "Toward",    "Away",      "Number",
    "Time",     "Duration",  "Long",         "Short",    "Caused",   "Consequential", "Social", "Human",
    "Communication", "Self", "Cognition",    "Benefit",  "Harm",     "Pleasant",  "Unpleasant", "Happy",
    "Sad",      "Angry",     "Disgusted",    "Fearful",  "Surprised", "Drive",    "Needs",     "Attention",
    "Arousal"};

constexpr int kDim = 16;

std::string make_word(Rng& rng, std::set<std::string>& used) {
    static const char* onsets[] = {"b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "st", "tr", "gl"};
    static const char* vowels[] = {"a", "e", "i", "o", "u", "ai", "ou"};
    for (;;) {
        std::string w;
        const auto syllables = 2 + rng.below(2);
        for (std::uint64_t s = 0; s < syllables; ++s) {
            w += onsets[rng.below(std::size(onsets))];
            w += vowels[rng.below(std::size(vowels))];
        }
        if (used.insert(w).second) return w;
    }
}

struct Word {
    std::string text;
    std::string list;  // primary list or "filler"
    int group = 0;     // avoidance sub-structure: 1 cognitive/drive, 2 fear/surprise
    Eigen::VectorXd vec;
};

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixture <output-dir>\n";
        return 2;
    }
    const std::filesystem::path dir = argv[1];
    Rng rng(20240601);
    std::set<std::string> used;

    // list name, size, valence mean, arousal mean, dominance mean
    struct ListSpec {
        const char* name;
        int size;
        double valence, arousal, dominance;
    };
    const ListSpec specs[] = {
        {"approach", 60, 0.82, 0.58, 0.70},     {"avoidance", 80, 0.20, 0.72, 0.36},
        {"hiv_positive", 70, 0.74, 0.45, 0.62}, {"hiv_negative", 70, 0.30, 0.52, 0.42},
        {"lm_positive", 50, 0.72, 0.50, 0.66},  {"lm_negative", 70, 0.26, 0.60, 0.40},
    };

    std::vector<Word> words;
    std::map<std::string, std::vector<std::size_t>> lists;
    std::map<std::string, const ListSpec*> spec_of;
    for (const auto& spec : specs) {
        spec_of[spec.name] = &spec;
        for (int i = 0; i < spec.size; ++i) {
            Word w{make_word(rng, used), spec.name, 0, Eigen::VectorXd(kDim)};
            if (std::string(spec.name) == "avoidance") w.group = i % 2 == 0 ? 1 : 2;
            lists[spec.name].push_back(words.size());
            words.push_back(std::move(w));
        }
    }
    // Shared entries between related lists.
    for (int i = 0; i < 12; ++i) lists["lm_negative"].push_back(lists["avoidance"][static_cast<std::size_t>(3 * i)]);
    for (int i = 0; i < 10; ++i) lists["hiv_negative"].push_back(lists["lm_negative"][static_cast<std::size_t>(2 * i)]);
    for (int i = 0; i < 8; ++i) lists["lm_positive"].push_back(lists["approach"][static_cast<std::size_t>(2 * i)]);
    std::vector<std::size_t> filler;
    for (int i = 0; i < 300; ++i) {
        filler.push_back(words.size());
        words.push_back({make_word(rng, used), "filler", 0, Eigen::VectorXd(kDim)});
    }

    // Word vectors: noise plus list and group directions.
    Eigen::MatrixXd directions(8, kDim);
    for (Eigen::Index r = 0; r < directions.rows(); ++r) {
        for (Eigen::Index c = 0; c < kDim; ++c) directions(r, c) = rng.normal(0.0, 1.0);
    }
    const std::map<std::string, int> list_direction{{"approach", 0}, {"avoidance", 1}, {"hiv_positive", 2},
                                                    {"hiv_negative", 3}, {"lm_positive", 4}, {"lm_negative", 5}};
    for (auto& w : words) {
        for (Eigen::Index c = 0; c < kDim; ++c) w.vec(c) = rng.normal(0.0, 0.6);
        if (auto it = list_direction.find(w.list); it != list_direction.end()) w.vec += 0.8 * directions.row(it->second).transpose();
        if (w.group > 0) w.vec += 1.2 * directions.row(5 + w.group).transpose();
    }

    // Binder-style ratings: a fixed linear map of the vectors plus noise.
    Eigen::MatrixXd map(static_cast<Eigen::Index>(kBinderFeatures.size()), kDim);
    for (Eigen::Index r = 0; r < map.rows(); ++r) {
        for (Eigen::Index c = 0; c < kDim; ++c) map(r, c) = rng.normal(0.0, 0.35);
    }
    auto feature_row = [&](const std::string& name) {
        return static_cast<Eigen::Index>(std::find(kBinderFeatures.begin(), kBinderFeatures.end(), name) - kBinderFeatures.begin());
    };
    map.row(feature_row("Cognition")) = 0.9 * directions.row(6);
    map.row(feature_row("Drive")) = 0.8 * directions.row(6) + 0.2 * directions.row(0);
    map.row(feature_row("Fearful")) = 0.9 * directions.row(7) + 0.3 * directions.row(1);
    map.row(feature_row("Surprised")) = 0.8 * directions.row(7);
    map.row(feature_row("Arousal")) = 0.4 * directions.row(7) + 0.4 * directions.row(1);

    std::string binder = "word";
    for (const auto& f : kBinderFeatures) binder += "," + f;
    binder += "\n";
    std::vector<std::size_t> binder_rows;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].list == "filler" ? rng.uniform() < 0.15 : rng.uniform() < 0.45) binder_rows.push_back(i);
    }
    for (auto i : binder_rows) {
        binder += words[i].text;
        const Eigen::VectorXd r = map * words[i].vec;
        for (Eigen::Index f = 0; f < r.size(); ++f) {
            binder += "," + fmt::format("{:.3f}", std::clamp(3.5 + r(f) + rng.normal(0.0, 0.25), 0.0, 7.0));
        }
        binder += "\n";
    }
    affect::io::write_file(dir / "binder.csv", binder);

    // VAD ratings; about 5% of list words are left unrated.
    std::string vad = "word,Valence,Arousal,Dominance\n";
    for (const auto& w : words) {
        if (w.list != "filler" && rng.uniform() < 0.05) continue;
        double v = 0.5, a = 0.4, d = 0.5;
        if (w.list != "filler") {
            const auto* s = spec_of[w.list];
            v = s->valence;
            a = s->arousal + (w.group == 2 ? 0.08 : 0.0);
            d = s->dominance;
        }
        vad += fmt::format("{},{:.3f},{:.3f},{:.3f}\n", w.text, clamp01(v + rng.normal(0.0, 0.1)),
                           clamp01(a + rng.normal(0.0, 0.1)), clamp01(d + rng.normal(0.0, 0.1)));
    }
    affect::io::write_file(dir / "vad.csv", vad);

    for (const auto& [name, members] : lists) {
        std::string text = "# " + name + "\n";
        for (auto i : members) text += words[i].text + "\n";
        affect::io::write_file(dir / "lists" / (name + ".txt"), text);
    }

    std::string vectors = fmt::format("{} {}\n", words.size(), kDim);
    for (const auto& w : words) {
        vectors += w.text;
        for (Eigen::Index c = 0; c < kDim; ++c) vectors += fmt::format(" {:.5f}", w.vec(c));
        vectors += "\n";
    }
    affect::io::write_file(dir / "vectors.txt", vectors);

    // Corpus: latent monthly tone drives how often list words appear.
    const char* tags[] = {"markets", "economy", "politics", "sport"};
    std::string corpus;
    double tone = 0.0;
    std::vector<double> tones;
    int article_id = 0;
    affect::YearMonth month{2000, 1};
    for (int m = 0; m < 240; ++m, month = month.next()) {
        tone = 0.8 * tone + rng.normal(0.0, 0.5);
        tones.push_back(tone);
        const auto n_articles = 8 + rng.below(5);
        for (std::uint64_t a = 0; a < n_articles; ++a) {
            const auto length = 40 + rng.below(80);
            const double p_pos = 0.06 * std::exp(0.4 * tone);
            const double p_neg = 0.06 * std::exp(-0.4 * tone);
            std::string text;
            for (std::uint64_t t = 0; t < length; ++t) {
                const double u = rng.uniform();
                const std::vector<std::size_t>* pool = &filler;
                if (u < p_pos) pool = rng.uniform() < 0.5 ? &lists["approach"] : (rng.uniform() < 0.5 ? &lists["hiv_positive"] : &lists["lm_positive"]);
                else if (u < p_pos + p_neg) pool = rng.uniform() < 0.5 ? &lists["avoidance"] : (rng.uniform() < 0.5 ? &lists["hiv_negative"] : &lists["lm_negative"]);
                std::string token = words[(*pool)[rng.below(pool->size())]].text;
                if (rng.uniform() < 0.05) token[0] = static_cast<char>(token[0] - 'a' + 'A');
                text += (t == 0 ? "" : (rng.uniform() < 0.08 ? ", " : " ")) + token;
            }
            text += ".";
            std::string tag_list;
            const auto n_tags = rng.below(3);
            for (std::uint64_t k = 0; k < n_tags; ++k) tag_list += fmt::format("{}\"{}\"", k == 0 ? "" : ",", tags[rng.below(4)]);
            const int day = 1 + static_cast<int>(rng.below(28));
            corpus += fmt::format(R"({{"id":"a{:05d}","date":"{}-{:02d}","tags":[{}],"text":"{}"}})", ++article_id,
                                  month.to_string(), day, tag_list, text) +
                      "\n";
        }
    }
    affect::io::write_file(dir / "corpus.jsonl", corpus);

    // Macro panel: seven I(1) series sharing five stochastic trends (two
    // cointegrating relations) and three stationary spreads.
    const int n = 240;
    Eigen::MatrixXd trends = Eigen::MatrixXd::Zero(n, 5);
    for (int t = 1; t < n; ++t) {
        for (int k = 0; k < 5; ++k) trends(t, k) = trends(t - 1, k) + 0.002 + rng.normal(0.0, 0.01);
    }
    Eigen::MatrixXd loadings(7, 5);
    loadings << 1.0, 0.0, 0.0, 0.0, 0.0,  //
        1.3, 0.4, 0.0, 0.0, 0.0,          //
        0.0, 0.0, 3.0, 0.0, 0.0,          //
        0.0, 0.0, 0.0, 40.0, 0.0,         //
        0.5, 0.0, 0.0, 0.0, 1.0,          //
        0.0, 0.0, 0.0, 20.0, 10.0,        //
        0.0, 20.0, 0.0, 0.0, 0.0;
    const Eigen::Vector<double, 7> base{4.6, 3.2, 7.0, 2.0, 4.5, 2.5, 0.0};
    Eigen::MatrixXd level(n, 7);
    Eigen::VectorXd noise = Eigen::VectorXd::Zero(7);
    Eigen::MatrixXd spreads(n, 3);
    Eigen::Vector3d s{0.5, 20.0, 2.0};
    for (int t = 0; t < n; ++t) {
        for (int k = 0; k < 7; ++k) noise(k) = 0.6 * noise(k) + rng.normal(0.0, k == 3 || k == 5 || k == 6 ? 0.05 : 0.004);
        level.row(t) = (base + loadings * trends.row(t).transpose() + noise).transpose();
        const double shock = t > 0 ? level(t, 2) - level(t - 1, 2) : 0.0;
        s(0) = 0.5 + 0.7 * (s(0) - 0.5) + rng.normal(0.0, 0.08);
        s(1) = 20.0 + 0.8 * (s(1) - 20.0) - 60.0 * shock + rng.normal(0.0, 1.5);
        s(2) = 2.0 + 0.85 * (s(2) - 2.0) + 0.02 * (s(1) - 20.0) + rng.normal(0.0, 0.1);
        spreads.row(t) = s.transpose();
    }
    std::string panel = "month,RGDP,RINV,SP,FEDFUND,PCE,INFEXP,TED,VIXCLS,GZSPR,EBPOA\n";
    month = {2000, 1};
    for (int t = 0; t < n; ++t, month = month.next()) {
        panel += fmt::format("{},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f},{:.4f}\n", month.to_string(),
                             std::exp(level(t, 0)), std::exp(level(t, 1)), std::exp(level(t, 2)), level(t, 3),
                             std::exp(level(t, 4)), level(t, 5), spreads(t, 0), spreads(t, 1), spreads(t, 2), level(t, 6));
    }
    affect::io::write_file(dir / "macro.csv", panel);
    std::cout << "wrote fixture to " << dir << "\n";
    return 0;
}
