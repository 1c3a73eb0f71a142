#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "feigen/feigen.hpp"

using namespace feigen;

namespace {

std::vector<std::vector<std::string>> split_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        if (!line.empty() && line.back() == ',') row.emplace_back();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST(Format, ShortestRoundTrip) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        const std::string s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        EXPECT_EQ(back, v) << s;
    }
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(std::nan("")), "nan");
    EXPECT_EQ(format_double(-kInf), "-inf");
}

TEST(Csv, QuotesText) {
    std::ostringstream out;
    CsvWriter w(out);
    w.field("a,b").field("say \"hi\"").field(1.5).field(true).end();
    EXPECT_EQ(out.str(), "\"a,b\",\"say \"\"hi\"\"\",1.5,1\n");
}

TEST(Csv, AttractorRoundTrip) {
    const Attractor a = classify_attractor(catalog("logistic"), {3.2, 0.0});
    std::ostringstream out;
    write_csv(out, a);
    const auto rows = split_csv(out.str());
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].back(), "x");
    for (int i = 0; i < 2; ++i) EXPECT_EQ(std::strtod(rows[i + 1].back().c_str(), nullptr), a.cycle[i]);
}

TEST(Csv, CascadeRowsAlignDeltas) {
    const MapFamily f = catalog("logistic");
    const auto seq = bifurcation_sequence(f, default_path(f), 4);
    const auto rep = delta_report(flip_parameters(seq));
    std::ostringstream out;
    write_csv(out, seq, rep);
    const auto rows = split_csv(out.str());
    ASSERT_EQ(rows.size(), 1u + 4u + 1u);
    EXPECT_EQ(rows[0][9], "delta");
    EXPECT_TRUE(rows[1][9].empty());
    EXPECT_EQ(std::strtod(rows[2][9].c_str(), nullptr), rep.delta[0]);
    EXPECT_EQ(std::strtod(rows[3][9].c_str(), nullptr), rep.delta[1]);
    EXPECT_TRUE(rows[4][9].empty());
    EXPECT_EQ(std::strtod(rows[2][3].c_str(), nullptr), seq.events[1].params.a);
    EXPECT_EQ(rows.back()[1], "accumulation");
}

TEST(Json, EnvelopeAndNulls) {
    const json e = envelope("classify", to_json(classify_attractor(catalog("logistic"), {3.2, 0.0})));
    EXPECT_EQ(e["schema_version"], kSchemaVersion);
    EXPECT_EQ(e["command"], "classify");
    EXPECT_EQ(e["result"]["kind"], "periodic");
    EXPECT_EQ(e["result"]["period"], 2);
    EXPECT_TRUE(to_json(Interval{0.0, kInf})[1].is_null());
    const auto keys = std::vector<std::string>{"schema_version", "command", "result"};
    std::size_t i = 0;
    for (auto it = e.begin(); it != e.end(); ++it) EXPECT_EQ(it.key(), keys[i++]);
}

TEST(Json, CaseTimingIsOptIn) {
    CaseReport c;
    c.seconds = 1.25;
    EXPECT_FALSE(to_json(c).contains("seconds"));
    EXPECT_TRUE(to_json(c, true).contains("seconds"));
}
