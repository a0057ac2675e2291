// Programs and proofs shared by the unit tests.
#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "aspdrupe/program_io.hpp"
#include "doctest.h"

namespace fixtures {

inline std::string read(const std::string& name) {
    std::ifstream in(std::string(ASPDRUPE_TEST_DATA) + "/" + name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// a..e are atoms 1..5; bodies as in the golden proof.
inline aspdrupe::Program example1() { return aspdrupe::parse_program(read("example1.lp")); }
inline std::string figure1() { return read("figure1.drupe"); }

enum : aspdrupe::Var { a = 1, b, c, d, e, Bc, Bnc, Bnd, Bad, Bbd, Bcd, BnanE, BcnE };

}  // namespace fixtures

// Readable values in failure messages.
namespace doctest {
template <class T>
struct StringMaker<std::vector<T>> {
    static String convert(const std::vector<T>& v) {
        String out = "[";
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + toString(v[i]);
        return out + "]";
    }
};
template <class T>
struct StringMaker<std::set<T>> {
    static String convert(const std::set<T>& v) { return StringMaker<std::vector<T>>::convert({v.begin(), v.end()}); }
};
template <class A, class B>
struct StringMaker<std::pair<A, B>> {
    static String convert(const std::pair<A, B>& p) {
        return "(" + toString(p.first) + ", " + toString(p.second) + ")";
    }
};
template <>
struct StringMaker<aspdrupe::Assignment> {
    static String convert(const aspdrupe::Assignment& a) { return aspdrupe::to_string(a.entries()).c_str(); }
};
}  // namespace doctest
