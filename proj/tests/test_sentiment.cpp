#include "test_support.hpp"

#include "affect/calendar.hpp"
#include "affect/rng.hpp"
#include "affect/sentiment.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

using namespace affect;
using namespace affect::sentiment;

namespace {

lexicon::WordList list(const std::string& name, std::vector<std::string> words) {
    return lexicon::WordList::from_tokens(name, words);
}

struct Doc {
    std::string date;
    std::string text;
    std::vector<std::string> tags;
};

std::string jsonl(const std::vector<Doc>& docs) {
    std::string out;
    int id = 0;
    for (const auto& d : docs) {
        nlohmann::json j{{"id", "a" + std::to_string(id++)}, {"date", d.date}, {"text", d.text}};
        if (!d.tags.empty()) j["tags"] = d.tags;
        out += j.dump() + "\n";
    }
    return out;
}

std::vector<SentimentSeries> build(const std::vector<Doc>& docs, const std::vector<IndexDefinition>& defs,
                                   const IndexOptions& options = {}, IndexStats* stats = nullptr) {
    std::istringstream in(jsonl(docs));
    return build_monthly_indices(in, defs, options, stats);
}

}  // namespace

TEST_CASE("tokenizer") {
    CHECK(tokenize("Stocks FELL, fears-rose 3.5%!") == std::vector<std::string>{"stocks", "fell", "fears", "rose", "3", "5"});
    CHECK(tokenize("caf\xc3\xa9 na\xc3\xafve") == std::vector<std::string>{"caf\xc3\xa9", "na\xc3\xafve"});
    // U+00D7 multiplication sign separates; so does an invalid byte.
    CHECK(tokenize("a\xc3\x97" "b c\xff" "d") == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(tokenize("  \n\t ").empty());
}

TEST_CASE("article score by hand") {
    const auto pos = list("p", {"gain", "strong", "boom"});
    const auto neg = list("n", {"loss", "fear", "boom"});
    const auto tokens = tokenize("Strong gain despite fear of loss and a boom");
    const auto s = article_sentiment(tokens, pos, neg);
    CHECK(s.total == 9);
    CHECK(s.positive == 2);
    CHECK(s.negative == 2);
    CHECK(s.conflicts == 1);
    CHECK(s.sentiment == 0.0);
    CHECK(test::error_code_of([&] { (void)article_sentiment({}, pos, neg); }) == ErrorCode::ZeroLength);
}

TEST_CASE("monthly index on a three-article corpus") {
    const auto pos = list("p", {"good"});
    const auto neg = list("n", {"bad"});
    const std::vector<Doc> docs{
        {"2010-01-03", "good good bad fine", {}},       // (2-1)/4 = 0.25
        {"2010-01-20T08:00:00", "bad news", {}},        // -1/2
        {"2010-03-01", "good times are good", {}},      // 2/4
    };
    const auto mean = build(docs, {{"idx", pos, neg}});
    REQUIRE(mean.size() == 1);
    CHECK(mean[0].months == std::vector<YearMonth>{{2010, 1}, {2010, 3}});
    CHECK(mean[0].values[0] == doctest::Approx((0.25 - 0.5) / 2.0));
    CHECK(mean[0].values[1] == doctest::Approx(0.5));
    CHECK(mean[0].article_counts == std::vector<std::size_t>{2, 1});

    IndexOptions weighted;
    weighted.aggregation = Aggregation::LengthWeighted;
    CHECK(build(docs, {{"idx", pos, neg}}, weighted)[0].values[0] == doctest::Approx(0.0 / 6.0));

    IndexOptions negative_only;
    negative_only.mode = IndexMode::NegativeOnly;
    const auto neg_series = build(docs, {{"idx", pos, neg}}, negative_only)[0];
    CHECK(neg_series.values[0] == doctest::Approx((-0.25 - 0.5) / 2.0));
    CHECK(neg_series.values[1] == 0.0);
}

TEST_CASE("tag filtering and corpus errors") {
    const auto pos = list("p", {"good"});
    const auto neg = list("n", {"bad"});
    const std::vector<Doc> docs{
        {"2011-05-01", "good", {"markets"}},
        {"2011-05-02", "bad", {"sport"}},
        {"2011-05-03", "bad", {}},
        {"2011-05-04", "... !!", {"markets"}},
    };
    IndexOptions options;
    options.tags = {"markets", "economy"};
    IndexStats stats;
    const auto series = build(docs, {{"idx", pos, neg}}, options, &stats);
    CHECK(series[0].values == std::vector<double>{1.0});
    CHECK(stats.records == 4);
    CHECK(stats.filtered_out == 2);
    CHECK(stats.zero_length == 1);
    CHECK(stats.scored == 1);

    options.tags = {"weather"};
    try {
        (void)build(docs, {{"idx", pos, neg}}, options);
        FAIL("expected EmptyCorpus");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyCorpus);
        CHECK(std::string(e.what()).find("weather") != std::string::npos);
    }

    std::istringstream broken("{\"id\": \"x\", \"text\": \"no date\"}\n");
    CHECK(test::error_code_of([&] { (void)build_monthly_indices(broken, std::vector<IndexDefinition>{{"idx", pos, neg}}, {}); }) ==
          ErrorCode::MalformedRecord);
    CHECK(test::error_code_of([] { (void)parse_article("{\"id\":\"x\",\"date\":\"2001-02-30\",\"text\":\"a\"}"); }) ==
          ErrorCode::MalformedRecord);
}

TEST_CASE("property: swapping lists negates, order does not matter, mean stays in [-1, 1]") {
    Rng rng(101);
    const std::vector<std::string> vocab{"up", "down", "flat", "gain", "loss", "calm", "panic", "news", "x1", "x2"};
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::string> p, n;
        for (const auto& w : vocab) {
            const auto r = rng.below(4);
            if (r == 0) p.push_back(w);
            if (r == 1) n.push_back(w);
            if (r == 2) {
                p.push_back(w);
                n.push_back(w);
            }
        }
        if (p.empty()) p.push_back("up");
        if (n.empty()) n.push_back("down");
        const auto pos = list("p", p);
        const auto neg = list("n", n);
        std::vector<Doc> docs;
        const auto n_docs = 1 + rng.below(12);
        for (std::size_t d = 0; d < n_docs; ++d) {
            std::string text;
            const auto len = 1 + rng.below(15);
            for (std::size_t t = 0; t < len; ++t) text += vocab[rng.below(vocab.size())] + " ";
            char date[16];
            std::snprintf(date, sizeof date, "2012-%02d-%02d", static_cast<int>(1 + rng.below(4)), static_cast<int>(1 + rng.below(28)));
            docs.push_back({date, text, {}});
        }
        const auto forward = build(docs, {{"f", pos, neg}})[0];
        const auto swapped = build(docs, {{"s", neg, pos}})[0];
        auto shuffled_docs = docs;
        rng.shuffle(shuffled_docs);
        const auto shuffled = build(shuffled_docs, {{"f", pos, neg}})[0];
        REQUIRE(forward.size() == swapped.size());
        for (std::size_t i = 0; i < forward.size(); ++i) {
            CHECK(forward.values[i] == -swapped.values[i]);
            CHECK(forward.values[i] == shuffled.values[i]);
            CHECK(std::abs(forward.values[i]) <= 1.0);
        }
        CHECK(std::is_sorted(forward.months.begin(), forward.months.end()));
    }
}

TEST_CASE("accumulator merge equals sequential adds") {
    Rng rng(3);
    MonthlyAccumulator whole, left, right;
    for (int i = 0; i < 500; ++i) {
        ArticleScore s;
        s.total = 1 + rng.below(50);
        s.positive = rng.below(s.total + 1);
        s.negative = rng.below(s.total - s.positive + 1);
        s.sentiment = (static_cast<double>(s.positive) - static_cast<double>(s.negative)) / static_cast<double>(s.total);
        const YearMonth m{2000, 1 + static_cast<int>(rng.below(3))};
        whole.add(m, s);
        (i % 3 == 0 ? left : right).add(m, s);
    }
    right.merge(left);
    CHECK(right.finish("x").values == whole.finish("x").values);
}

TEST_CASE("series CSV round trip and calendar parsing") {
    test::TempDir dir;
    SentimentSeries s{"idx", {{1999, 12}, {2000, 1}}, {-0.125, 1.0 / 3.0}, {4, 2}};
    const auto path = dir.write("idx.csv", format_series_csv(s));
    const auto back = load_series_csv(path, "idx");
    CHECK(back.values == s.values);
    CHECK(back.months == s.months);
    CHECK(back.article_counts == s.article_counts);

    CHECK(CalendarDate::parse("2000-02-29"));
    CHECK_FALSE(CalendarDate::parse("1900-02-29"));
    CHECK_FALSE(CalendarDate::parse("2000-13-01"));
    CHECK(CalendarDate::parse("2000-02-29 12:00")->day == 29);
    CHECK(YearMonth{1999, 12}.next() == YearMonth{2000, 1});
    CHECK(YearMonth::parse("2003-07")->to_string() == "2003-07");
}
