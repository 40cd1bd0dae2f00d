#include <doctest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <limits>

#include "detcs/errors.hpp"
#include "detcs/matrix_io.hpp"
#include "detcs/random.hpp"

using namespace detcs;

namespace {

bool bit_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        const auto x = a.entries()[k], y = b.entries()[k];
        if (std::bit_cast<std::uint64_t>(x.real()) != std::bit_cast<std::uint64_t>(y.real()) ||
            std::bit_cast<std::uint64_t>(x.imag()) != std::bit_cast<std::uint64_t>(y.imag()))
            return false;
    }
    return true;
}

std::size_t parse_error_line(std::string_view text) {
    try {
        parse_matrix(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_SUITE("matrix_io") {
    TEST_CASE("parses small examples") {
        CHECK(parse_matrix("2 2\n1 0 0 0\n0 0 1 0\n") == ComplexMatrix::identity(2));
        CHECK(parse_matrix("1 1\n0 1") == ComplexMatrix{{Complex{0, 1}}});
        CHECK(parse_matrix("# weight\n\n1 2\n  +1.5 -2   3e1 0\n# trailing\n") ==
              ComplexMatrix{{Complex{1.5, -2}, Complex{30, 0}}});
    }

    TEST_CASE("serialize then parse is bit exact") {
        Rng rng(314);
        auto a = ginibre(rng, 3, 4);
        const double extremes[] = {-0.0, std::numeric_limits<double>::denorm_min(),
                                   std::numeric_limits<double>::max(),
                                   -std::numeric_limits<double>::min(), 0.1, 1.0 / 3.0};
        for (std::size_t k = 0; k < std::size(extremes); ++k)
            a(k / 4, k % 4) = Complex{extremes[k], -extremes[k]};
        const auto back = parse_matrix(serialize_matrix(a));
        CHECK(bit_equal(back, a));
        CHECK(std::signbit(back(0, 0).real()));

        for (std::size_t t = 0; t < 100; ++t) {
            Rng r(derive_seed(99, t));
            const auto m = r.between(1, 6), n = r.between(1, 6);
            auto x = ginibre(r, m, n);
            x = Complex{std::pow(10.0, r.between(0, 600) - 300.0), 0} * x;
            INFO("trial " << t);
            CHECK(bit_equal(parse_matrix(serialize_matrix(x)), x));
        }
    }

    TEST_CASE("serialized form has a header and 2n numbers per row") {
        const auto text = serialize_matrix(ComplexMatrix{{Complex{1, -0.5}, 2}});
        CHECK(text == "1 2\n1 -0.5 2 0\n");
        CHECK(format_double(0.1) == "0.1");
        CHECK(format_double(-0.0) == "-0");
    }

    TEST_CASE("errors carry the offending line number") {
        CHECK(parse_error_line("") == 1);
        CHECK(parse_error_line("2\n") == 1);
        CHECK(parse_error_line("0 2\n") == 1);
        CHECK(parse_error_line("2 x\n") == 1);
        CHECK(parse_error_line("# c\n1 2\n1 0 0\n") == 3);
        CHECK(parse_error_line("1 1\nnan 0\n") == 2);
        CHECK(parse_error_line("1 1\n0 inf\n") == 2);
        CHECK(parse_error_line("1 1\n1e999 0\n") == 2);
        CHECK(parse_error_line("1 1\n1 0x\n") == 2);
        CHECK(parse_error_line("2 1\n1 0\n") > 0);
        CHECK(parse_error_line("1 1\n1 0\n2 0\n") == 3);
    }

    TEST_CASE("file round trip") {
        const auto path = std::filesystem::temp_directory_path() / "detcs_io_roundtrip.txt";
        Rng rng(8);
        const auto a = ginibre(rng, 4, 2);
        write_matrix_file(path, a);
        CHECK(bit_equal(read_matrix_file(path), a));
        std::filesystem::remove(path);
        CHECK_THROWS(read_matrix_file(path));
    }
}
