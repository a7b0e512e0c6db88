#include "test_support.hpp"

#include "affect/feature_matrix.hpp"
#include "affect/lexicon.hpp"
#include "affect/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace affect;
using namespace affect::lexicon;

TEST_CASE("word lists lowercase, deduplicate and keep order") {
    const std::vector<std::string> tokens{"Fear", "dread", "FEAR", "calm"};
    const auto list = WordList::from_tokens("mood", tokens);
    CHECK(list.words() == std::vector<std::string>{"fear", "dread", "calm"});
    CHECK(list.contains("dread"));
    CHECK_FALSE(list.contains("Fear"));

    const std::vector<std::string> spaced{"two words"};
    CHECK(test::error_code_of([&] { (void)WordList::from_tokens("x", spaced); }) == ErrorCode::InvalidToken);
    CHECK(test::error_code_of([] { (void)WordList::from_tokens("x", {}); }) == ErrorCode::EmptyList);
}

TEST_CASE("list files: comments, blanks and round trip") {
    test::TempDir dir;
    const auto path = dir.write("approach.txt", "# header\nwant\n\n  seek \r\nWant\n");
    const auto list = load_word_list(path);
    CHECK(list.name() == "approach");
    CHECK(list.words() == std::vector<std::string>{"want", "seek"});
    const auto again = dir.write("again.txt", format_word_list(list));
    CHECK(load_word_list(again, "approach").words() == list.words());

    CHECK(test::error_code_of([&] { (void)load_word_list(dir / "missing.txt"); }) == ErrorCode::MissingFile);
    const auto comments_only = dir.write("empty.txt", "# nothing\n\n");
    CHECK(test::error_code_of([&] { (void)load_word_list(comments_only); }) == ErrorCode::EmptyList);
}

TEST_CASE("rating tables: delimiters, scale checks and duplicates") {
    test::TempDir dir;
    const auto csv = dir.write("vad.csv", "word,Valence,Arousal\nfear,0.1,0.9\ncalm,0.8,0.1\n");
    const auto tsv = dir.write("vad.tsv", "word\tValence\tArousal\nfear\t0.1\t0.9\ncalm\t0.8\t0.1\n");
    const auto a = load_rating_table(csv, kVadScale);
    const auto b = load_rating_table(tsv, kVadScale);
    CHECK(a.values == b.values);
    CHECK(a.feature_names == std::vector<std::string>{"Valence", "Arousal"});
    CHECK(*a.find("calm") == 1);
    CHECK_FALSE(a.find("joy"));

    const auto out_of_scale = dir.write("bad.csv", "word,Valence\nfear,1.5\n");
    CHECK(test::error_code_of([&] { (void)load_rating_table(out_of_scale, kVadScale); }) == ErrorCode::OutOfScale);
    const auto text = dir.write("text.csv", "word,Valence\nfear,high\n");
    CHECK(test::error_code_of([&] { (void)load_rating_table(text, kVadScale); }) == ErrorCode::NonNumeric);
    const auto ragged = dir.write("ragged.csv", "word,Valence,Arousal\nfear,0.1\n");
    CHECK(test::error_code_of([&] { (void)load_rating_table(ragged, kVadScale); }) == ErrorCode::RaggedRow);
    const auto both = dir.write("both.csv", "word,Valence\tArousal\n");
    CHECK(test::error_code_of([&] { (void)load_rating_table(both, kVadScale); }) == ErrorCode::AmbiguousDelimiter);

    const std::vector<std::string> words{"Fear", "calm", "fear"};
    Eigen::MatrixXd values(3, 1);
    values << 0.1, 0.8, 0.3;
    const auto table = make_rating_table({"Valence"}, kVadScale, words, values);
    CHECK(table.size() == 2);
    CHECK(table.duplicate_rows == 1);
    CHECK(table.values(*table.find("fear"), 0) == 0.3);
}

TEST_CASE("joining a list to ratings records coverage and dropped words") {
    const std::vector<std::string> words{"fear", "calm", "joy"};
    Eigen::MatrixXd values(3, 2);
    values << 0.1, 0.9, 0.8, 0.1, 0.9, 0.6;
    const auto table = make_rating_table({"Valence", "Arousal"}, kVadScale, words, values);
    const std::vector<std::string> tokens{"joy", "unknown", "fear", "absent"};
    const auto set = join(WordList::from_tokens("mix", tokens), table);
    CHECK(set.words == std::vector<std::string>{"joy", "fear"});
    CHECK(set.dropped == std::vector<std::string>{"unknown", "absent"});
    CHECK(set.coverage() == 0.5);
    const auto means = feature_means(set);
    CHECK(means(0) == doctest::Approx(0.5));
    CHECK(means(1) == doctest::Approx(0.75));
    CHECK(test::error_code_of([&] { (void)set.column("Dominance"); }) == ErrorCode::MissingFeature);

    const std::vector<std::string> none{"zzz"};
    CHECK(test::error_code_of([&] { (void)join(WordList::from_tokens("none", none), table); }) == ErrorCode::NoOverlap);
}

TEST_CASE("feature matrices round trip through CSV bit for bit") {
    test::TempDir dir;
    FeatureMatrix m;
    m.words = {"a", "b"};
    m.feature_names = {"Vision", "Fearful"};
    m.values.resize(2, 2);
    m.values << 0.1, 1.0 / 3.0, 6.999999999999999, 2.0;
    const auto path = dir.write("f.csv", format_feature_csv(m));
    const auto back = load_feature_matrix(path);
    CHECK(back.values == m.values);
    CHECK(back.feature_names == m.feature_names);
    CHECK(back.column("Fearful")(0) == 1.0 / 3.0);
    CHECK(as_feature_matrix(as_rating_table(m)).values == m.values);
}

TEST_CASE("number formatting round-trips") {
    Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<double>(rng.below(30)) - 15.0);
        CHECK(*io::parse_double(io::format_double(v)) == v);
    }
    CHECK_FALSE(io::parse_double("1.5x"));
    CHECK_FALSE(io::parse_double(""));
}
