#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <pcurv/errors.hpp>

namespace pcurv::cli {

using Json = nlohmann::ordered_json;

// option/usage problems map to exit code 2, computational errors to 3
struct UsageError : Error {
    using Error::Error;
};

struct ClassifyOptions {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> alpha;
    std::vector<std::string> singularities;  // integers or lambda expressions, "L" for lambda
    std::vector<std::string> beta;
    std::optional<std::uint64_t> d;
};

struct SearchOptions {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> alpha;
    int r = 0;
    std::optional<int> degree;       // existence-polynomial mode
    bool generic_lambda = false;
    std::vector<std::string> singularities;
    std::optional<std::string> lambda;  // shorthand third singularity for r = 4
    std::uint64_t budget = 1000000;
};

struct NonemptyOptions {
    std::uint64_t p = 0;
    int r = 0;
    long long n = 0;
    std::uint64_t budget = 1000000;
};

struct DimensionOptions {
    std::uint64_t p = 0;
    std::string signature;  // comma-separated a:nu pairs
    std::optional<int> d;
};

Json cmd_classify(const ClassifyOptions& opt);
Json cmd_search(const SearchOptions& opt);
Json cmd_nonempty(const NonemptyOptions& opt);
Json cmd_dimension(const DimensionOptions& opt);
Json cmd_example(const std::string& name);

// "key,value" rows with dotted paths, arrays indexed; the json form uses
// two-space indentation
std::string to_csv(const Json& j);
std::string to_output(const Json& j, const std::string& format);

}  // namespace pcurv::cli
