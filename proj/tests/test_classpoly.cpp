#include <catch2/catch_amalgamated.hpp>

#include "g2crt/classpoly.hpp"

using namespace g2crt;

namespace {

const CMFieldParams kP13 = classify(13, 3, 13);

// Reduce a rational with denominator coprime to p into F_p.
std::uint64_t red(const Rat& r, std::uint64_t p) {
    Int pz(static_cast<unsigned long>(p));
    Int n = mod_pos(r.get_num(), pz);
    return mod_pos(n * mod_inverse(mod_pos(r.get_den(), pz), pz), pz).get_ui();
}

ClassPolyModP fake_part(std::uint64_t p, std::array<std::vector<Rat>, 3> H) {
    ClassPolyModP c;
    c.p = p;
    c.params = kP13;
    for (int i = 0; i < 3; ++i)
        for (auto& r : H[i]) c.H[i].push_back(red(r, p));
    return c;
}

const ClassPolyModP& part43() {
    static ClassPolyModP part = classpoly_mod_p(kP13, 43, 17);
    return part;
}

}  // namespace

TEST_CASE("classpoly_mod_p: the section-7 census and polynomials") {
    const ClassPolyModP& c = part43();
    INFO("unresolved triples: " << c.unresolved_triples << ", seconds: " << c.seconds);
    CHECK(c.census_isogeny == 67);
    CHECK(c.census_filter == 6);
    CHECK(c.census_final == 2);
    CHECK(c.H[0] == FpVec{32, 30, 1});
    CHECK(c.H[1] == FpVec{10, 42, 1});
    CHECK(c.H[2] == FpVec{28, 18, 1});
    CHECK(c.curves.size() == 67);
    // Census members carry verified zeta data: orders from the group-order
    // set, and point counts pair up as 36/52 twins.
    std::size_t n36 = 0, n52 = 0;
    for (auto& cc : c.curves) {
        if (cc.N1 == 36) {
            ++n36;
            CHECK(cc.N == 1548);
        } else {
            CHECK(cc.N1 == 52);
            ++n52;
            CHECK(cc.N == 2252);
        }
    }
    CHECK(n36 + n52 == 67);
    // Machine record sanity.
    std::string rec = to_record(c);
    CHECK(rec.find("\"classpoly_mod_p\"") != std::string::npos);
    CHECK(rec.find("\"isogeny\":67") != std::string::npos);
}

TEST_CASE("classpoly_mod_p rejects a failing prime") {
    CHECK_THROWS_AS(classpoly_mod_p(kP13, 31, 1), std::invalid_argument);
}

TEST_CASE("van Wamelen's rational polynomials reduce to the mod-43 parts") {
    // The published H_i with rational coefficients (Siegel modular form
    // evaluation); reducing mod 43 must reproduce the census output.
    auto q = [](const char* n, const char* d) -> Rat { return Rat(Int(n)) / Rat(Int(d)); };
    std::array<std::vector<Rat>, 3> H = {
        std::vector<Rat>{
            q("17211893103548805144815938862454140808252633213039291208686119112918076788941674"
              "683411636004",
              "58670687646017062528338814934164161420328368922180746779053222569"),
            -q("9625430292534239443768093859336546624656066801331680515511924",
               "1224160503138337270992732796402545210705949947"),
            Rat(1)},
        std::vector<Rat>{
            q("101869481833026643236326057638275086345512388711354393815337676100",
              "387742378329008606934824201506984053723129"),
            -q("3237631624959669936998571242515324335027260", "7973132502458523379282597629"),
            Rat(1)},
        std::vector<Rat>{
            q("83671593583457548222292142563905819629154823011540406083420061764",
              "3489681404961077462413417813562856483508161"),
            -q("2511631949170772694805531862232571975071932", "23919397507375570137847792887"),
            Rat(1)}};
    const ClassPolyModP& c = part43();
    for (int i = 0; i < 3; ++i) {
        REQUIRE(H[i].size() == c.H[i].size());
        for (std::size_t k = 0; k < H[i].size(); ++k) CHECK(red(H[i][k], 43) == c.H[i][k]);
    }
}

TEST_CASE("crt_assemble fixtures") {
    // Single part, integer polynomial, small coefficients, lambda = 1.
    {
        auto part = fake_part(101, {std::vector<Rat>{Rat(-7), Rat(31), Rat(1)},
                                    std::vector<Rat>{Rat(4), Rat(1)}, std::vector<Rat>{Rat(1)}});
        ClassPolySet s = crt_assemble({part}, 1, Rat(50));
        CHECK(s.H[0] == std::vector<Rat>{Rat(-7), Rat(31), Rat(1)});
        CHECK(s.H[1] == std::vector<Rat>{Rat(4), Rat(1)});
        CHECK(s.lambda == 1);
    }
    // Hand CRT: constant 1/3 with residues (5,2), (7,5), (11,4), lambda 3.
    {
        std::vector<ClassPolyModP> parts;
        for (auto [p, r] : {std::pair<std::uint64_t, std::uint64_t>{5, 2}, {7, 5}, {11, 4}}) {
            ClassPolyModP c;
            c.p = p;
            c.params = kP13;
            c.H = {FpVec{r}, FpVec{r}, FpVec{r}};
            parts.push_back(c);
        }
        ClassPolySet s = crt_assemble(parts, 3, make_rat(1, 3));
        CHECK(s.H[0][0] == make_rat(1, 3));
    }
    // Errors: insufficient modulus (with deficit) and shared factor.
    {
        auto part = fake_part(101, {std::vector<Rat>{Rat(1)}, std::vector<Rat>{Rat(1)},
                                    std::vector<Rat>{Rat(1)}});
        CHECK_THROWS_AS(crt_assemble({part}, 1, Rat(200)), std::runtime_error);
        CHECK_THROWS_AS(crt_assemble({part}, 101, Rat(1)), std::invalid_argument);
    }
    // Degree mismatch across parts is a hard error.
    {
        auto a = fake_part(101, {std::vector<Rat>{Rat(1), Rat(1)}, std::vector<Rat>{Rat(1)},
                                 std::vector<Rat>{Rat(1)}});
        auto b = fake_part(103, {std::vector<Rat>{Rat(1)}, std::vector<Rat>{Rat(1)},
                                 std::vector<Rat>{Rat(1)}});
        CHECK_THROWS_AS(crt_assemble({a, b}, 1, Rat(1)), std::runtime_error);
    }
}

TEST_CASE("crt_assemble round-trips random rational polynomials") {
    std::mt19937_64 rng(99);
    std::vector<std::uint64_t> primes = {101, 103, 107, 109, 113};
    for (int trial = 0; trial < 30; ++trial) {
        Int lambda = 1 + static_cast<long>(rng() % 40);
        std::array<std::vector<Rat>, 3> H;
        Rat nu = 0;
        for (int i = 0; i < 3; ++i) {
            int deg = 1 + static_cast<int>(rng() % 3);
            for (int k = 0; k < deg; ++k) {
                Int num = Int(static_cast<long>(rng() % 20000)) - 10000;
                // Force lambda * coeff integral: numerator over a divisor of lambda.
                Int den = 1 + static_cast<long>(rng() % 5);
                while (lambda % den != 0) den = 1 + static_cast<long>(rng() % 5);
                H[i].push_back(make_rat(num, den));
                Rat a = abs(H[i].back());
                if (a > nu) nu = a;
            }
            H[i].push_back(Rat(1));  // monic
        }
        std::vector<ClassPolyModP> parts;
        for (auto p : primes) parts.push_back(fake_part(p, H));
        ClassPolySet s = crt_assemble(parts, lambda, nu);
        CHECK(s.H == H);
        for (int i = 0; i < 3; ++i) CHECK(s.H[i].back() == Rat(1));
        // Reduction consistency.
        for (std::size_t j = 0; j < primes.size(); ++j)
            for (int i = 0; i < 3; ++i)
                for (std::size_t k = 0; k < H[i].size(); ++k)
                    CHECK(red(s.H[i][k], primes[j]) == parts[j].H[i][k]);
    }
}

TEST_CASE("rational_reconstruct_assemble") {
    // Residues of 1/3 mod {5, 7, 11} reconstruct to 1/3.
    std::vector<ClassPolyModP> parts;
    for (auto [p, r] : {std::pair<std::uint64_t, std::uint64_t>{5, 2}, {7, 5}, {11, 4}}) {
        ClassPolyModP c;
        c.p = p;
        c.params = kP13;
        c.H = {FpVec{r}, FpVec{r}, FpVec{r}};
        parts.push_back(c);
    }
    auto s = rational_reconstruct_assemble(parts);
    REQUIRE(s.has_value());
    CHECK(s->H[0][0] == make_rat(1, 3));
    CHECK(s->lambda == 3);

    // Integer coefficient within bound: the integer itself.
    auto si = rational_reconstruct_assemble(
        {fake_part(101, {std::vector<Rat>{Rat(9)}, std::vector<Rat>{Rat(9)},
                         std::vector<Rat>{Rat(9)}}),
         fake_part(103, {std::vector<Rat>{Rat(9)}, std::vector<Rat>{Rat(9)},
                         std::vector<Rat>{Rat(9)}}),
         fake_part(107, {std::vector<Rat>{Rat(9)}, std::vector<Rat>{Rat(9)},
                         std::vector<Rat>{Rat(9)}})});
    REQUIRE(si.has_value());
    CHECK(si->H[0][0] == Rat(9));

    // A single part is insufficient (leave-one-out impossible).
    CHECK_FALSE(rational_reconstruct_assemble({parts[0]}).has_value());

    // Too little data for a large rational: leave-one-out disagrees.
    Rat big = make_rat(Int("10007"), Int("23"));
    auto s2 = rational_reconstruct_assemble(
        std::vector<ClassPolyModP>{fake_part(101, {std::vector<Rat>{big}, std::vector<Rat>{big}, std::vector<Rat>{big}}),
         fake_part(103, {std::vector<Rat>{big}, std::vector<Rat>{big}, std::vector<Rat>{big}})});
    CHECK_FALSE(s2.has_value());
    // With enough primes it succeeds.
    std::vector<ClassPolyModP> more;
    for (auto p : {101ull, 103ull, 107ull, 109ull, 113ull, 127ull, 131ull, 137ull})
        more.push_back(fake_part(p, {std::vector<Rat>{big}, std::vector<Rat>{big}, std::vector<Rat>{big}}));
    auto s3 = rational_reconstruct_assemble(more);
    REQUIRE(s3.has_value());
    CHECK(s3->H[0][0] == big);
}
