#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <set>

#include <streamtree/element_pool.hpp>

using namespace streamtree;

namespace {

DatasetSchema small_schema() {
    DatasetSchema s;
    s.label_count = 3;
    AttributeSchema n0, n1, c0;
    n0.kind = AttributeKind::numeric;
    n0.name = "x";
    n1.kind = AttributeKind::numeric;
    n1.name = "y";
    c0.kind = AttributeKind::categorical;
    c0.name = "c";
    c0.value_count = 4;
    s.attributes = {n0, n1, c0};
    s.finalize();
    return s;
}

ObserverConfig quantile_config() {
    ObserverConfig o;
    o.mode = ObserverMode::quantile;
    o.quantile_count = 4;
    o.lambda = 0.01;
    return o;
}

Sample make_sample(double x, double y, int c, int label) {
    return Sample{{x, y}, {c}, label};
}

}  // namespace

TEST_CASE("pool exhausts at capacity and reuses released slots") {
    const auto schema = small_schema();
    ElementPool pool(2, schema, quantile_config());
    REQUIRE(pool.allocate(1).has_value());
    REQUIRE(pool.allocate(2).has_value());
    CHECK(!pool.allocate(3).has_value());  // exhausted, not an error

    pool.element_for(1).observe(make_sample(0.5, -0.5, 2, 1));
    CHECK(pool.element_for(1).sample_count() == 1);

    pool.release(1);
    const auto slot = pool.allocate(4);
    REQUIRE(slot.has_value());
    // reused slot comes back logically fresh
    const LeafElement& e = pool.element_for(4);
    CHECK(e.sample_count() == 0);
    CHECK(e.samples_since_trial() == 0);
    CHECK(!e.histogram(0).valid());
    CHECK(!e.quantile_row(0, 1).seeded());
}

TEST_CASE("pool rejects double binds and unknown releases") {
    const auto schema = small_schema();
    ElementPool pool(2, schema, quantile_config());
    pool.allocate(1);
    CHECK_THROWS_AS(pool.allocate(1), std::logic_error);
    CHECK_THROWS_AS(pool.release(9), std::logic_error);
    pool.release(1);
    CHECK_THROWS_AS(pool.release(1), std::logic_error);
}

TEST_CASE("pool bijection holds under ten thousand random operations") {
    const auto schema = small_schema();
    const int capacity = 8;
    ElementPool pool(capacity, schema, quantile_config());
    std::map<std::uint64_t, bool> reference;  // bound leaves
    std::mt19937_64 rng(21);
    std::uint64_t next_leaf = 1;
    std::vector<std::uint64_t> bound;
    for (int op = 0; op < 10000; ++op) {
        const bool do_alloc = bound.empty() || (rng() % 2 == 0);
        if (do_alloc) {
            const std::uint64_t leaf = next_leaf++;
            const auto slot = pool.allocate(leaf);
            if (static_cast<int>(bound.size()) < capacity) {
                REQUIRE(slot.has_value());
                bound.push_back(leaf);
                reference[leaf] = true;
            } else {
                REQUIRE(!slot.has_value());
            }
        } else {
            const std::size_t pick = rng() % bound.size();
            const std::uint64_t leaf = bound[pick];
            pool.release(leaf);
            reference.erase(leaf);
            bound.erase(bound.begin() + pick);
        }
        // bound + free == capacity, and the table matches the reference model
        REQUIRE(pool.bound_count() + pool.free_count() == capacity);
        REQUIRE(pool.bound_count() == static_cast<int>(reference.size()));
        for (const auto& [leaf, _] : reference) REQUIRE(pool.bound(leaf));
    }
}

TEST_CASE("observe maintains count conservation and ranges") {
    const auto schema = small_schema();
    ElementPool pool(1, schema, quantile_config());
    pool.allocate(1);
    LeafElement& e = pool.element_for(1);

    e.observe(make_sample(0.2, 1.0, 0, 1));
    CHECK(e.sample_count() == 1);
    CHECK(e.class_counts() == std::vector<long long>{0, 1, 0});

    e.observe(make_sample(0.8, -1.0, 3, 1));
    CHECK(e.min_value(0) == 0.2);
    CHECK(e.max_value(0) == 0.8);
    CHECK(e.min_value(1) == -1.0);
    CHECK(e.max_value(1) == 1.0);

    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> dist(-1, 1);
    for (int i = 0; i < 500; ++i)
        e.observe(make_sample(dist(rng), dist(rng), static_cast<int>(rng() % 4),
                              static_cast<int>(rng() % 3)));
    long long total = 0;
    for (long long c : e.class_counts()) total += c;
    CHECK(total == e.sample_count());
    CHECK(e.histogram(0).total() == e.sample_count());
}

TEST_CASE("after seeding, only the matching-class quantile row moves") {
    const auto schema = small_schema();
    ElementPool pool(1, schema, quantile_config());
    pool.allocate(1);
    LeafElement& e = pool.element_for(1);
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> dist(-1, 1);
    // the first sample seeds every class row of both attributes at its value
    const double first = dist(rng);
    e.observe(make_sample(first, first, 0, 1));
    for (int slot = 0; slot < 2; ++slot)
        for (int j = 0; j < 3; ++j) {
            REQUIRE(e.quantile_row(slot, j).seeded());
            for (double v : e.quantile_row(slot, j).values()) REQUIRE(v == first);
        }
    for (int i = 0; i < 500; ++i) {
        const int label = static_cast<int>(rng() % 3);
        // snapshot all rows, then check only row `label` changed
        std::vector<std::vector<double>> before;
        for (int slot = 0; slot < 2; ++slot)
            for (int j = 0; j < 3; ++j) before.push_back(e.quantile_row(slot, j).values());
        e.observe(make_sample(dist(rng), dist(rng), 0, label));
        for (int slot = 0; slot < 2; ++slot)
            for (int j = 0; j < 3; ++j) {
                if (j == label) continue;
                REQUIRE(e.quantile_row(slot, j).values() == before[slot * 3 + j]);
            }
    }
}

TEST_CASE("gaussian mode populates gaussian rows instead") {
    const auto schema = small_schema();
    ObserverConfig config;
    config.mode = ObserverMode::gaussian;
    ElementPool pool(1, schema, config);
    pool.allocate(1);
    LeafElement& e = pool.element_for(1);
    e.observe(make_sample(1.0, 0.0, 0, 2));
    e.observe(make_sample(3.0, 0.0, 0, 2));
    CHECK(e.gaussian_row(0, 2).mean() == Catch::Approx(2.0));
    CHECK(e.gaussian_row(0, 0).weight_sum() == 0.0);
}
