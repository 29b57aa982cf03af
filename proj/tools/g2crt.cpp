// g2crt: Igusa class polynomials by the CRT method, and genus-2 curves with
// prescribed Jacobian order.
//
// Usage: g2crt VERB [flags]
//   Verbs: analyze-field, find-primes, classpoly-mod-p, classpoly,
//          build-curve, verify-curve
//   Flags: --field a,b,d       quartic CM field Q(i*sqrt(a + b*sqrt(d)))
//          --zeta n,N1,N2      target prime and point counts (build-curve)
//          --prime p           single prime (classpoly-mod-p, verify-curve)
//          --curve c6,...,c0   sextic coefficients, highest degree first
//          --primes-product c  target product of census primes
//          --lambda L          known denominator bound (CRT mode)
//          --seed s            master seed (default 1)
//          --jobs j            worker threads (default 1)
//          --cache-dir DIR     persistent result cache
//          --format text|json-like-record
// Exit codes: 0 success, 2 precondition violation, 3 insufficient data,
//             4 internal invariant breach.

#include <cstring>
#include <iostream>

#include "g2crt/pipeline.hpp"

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t c = s.find(',', start);
        if (c == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, c - start));
        start = c + 1;
    }
    return out;
}

int usage() {
    std::cerr << "usage: g2crt VERB [--field a,b,d | --zeta n,N1,N2] [--prime p]\n"
                 "             [--curve c6,...,c0] [--primes-product c] [--lambda L]\n"
                 "             [--seed s] [--jobs j] [--cache-dir DIR]\n"
                 "             [--format text|json-like-record]\n"
                 "verbs: analyze-field find-primes classpoly-mod-p classpoly\n"
                 "       build-curve verify-curve\n";
    return g2crt::kExitPrecondition;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace g2crt;
    if (argc < 2) return usage();
    std::string verb = argv[1];
    RunConfig cfg;
    try {
        for (int i = 2; i < argc; ++i) {
            std::string flag = argv[i];
            auto need = [&]() -> std::string {
                if (i + 1 >= argc) throw std::invalid_argument("missing value for " + flag);
                return argv[++i];
            };
            if (flag == "--field") {
                auto v = split_commas(need());
                if (v.size() != 3) throw std::invalid_argument("--field wants a,b,d");
                cfg.field = classify(Int(v[0]), Int(v[1]), Int(v[2]));
            } else if (flag == "--zeta") {
                auto v = split_commas(need());
                if (v.size() != 3) throw std::invalid_argument("--zeta wants n,N1,N2");
                cfg.zeta = {Int(v[0]), Int(v[1]), Int(v[2])};
            } else if (flag == "--prime") {
                cfg.prime = std::stoull(need());
            } else if (flag == "--curve") {
                auto v = split_commas(need());
                FpVec f;
                for (auto it = v.rbegin(); it != v.rend(); ++it)  // to lowest-first
                    f.push_back(std::stoull(*it));
                cfg.curve = f;
            } else if (flag == "--primes-product") {
                cfg.primes_product = Int(need());
            } else if (flag == "--lambda") {
                cfg.lambda = Int(need());
            } else if (flag == "--seed") {
                cfg.seed = std::stoull(need());
            } else if (flag == "--jobs") {
                cfg.jobs = static_cast<unsigned>(std::stoul(need()));
            } else if (flag == "--cache-dir") {
                cfg.cache_dir = need();
            } else if (flag == "--format") {
                std::string f = need();
                if (f == "text")
                    cfg.format = OutFormat::text;
                else if (f == "json-like-record")
                    cfg.format = OutFormat::record;
                else
                    throw std::invalid_argument("--format wants text or json-like-record");
            } else {
                std::cerr << "unknown flag: " << flag << "\n";
                return usage();
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    CmdResult r = run_verb(verb, cfg);
    (r.code == 0 ? std::cout : std::cerr) << r.output;
    return r.code;
}
