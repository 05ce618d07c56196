#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "blockage/sweep.hpp"

namespace blockage::io {

enum class Format { csv, json };

// Shortest round-trip decimal form; locale-independent, '.' separator.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline constexpr std::string_view sweep_csv_header =
    "rho,r,theory_paper_db,theory_exact_db,sim_mean_db,sim_ci95_low_db,sim_ci95_high_db,"
    "abs_err,rel_err,within_ci,trials,seed";

inline void write_sweep_csv(std::ostream& os, const std::vector<analysis::SweepRecord>& records) {
    os << sweep_csv_header << '\n';
    for (const analysis::SweepRecord& rec : records) {
        os << format_double(rec.rho) << ',' << format_double(rec.r) << ','
           << format_double(to_db(rec.theory_paper)) << ','
           << format_double(to_db(rec.theory_exact)) << ',' << format_double(to_db(rec.sim_mean))
           << ',' << format_double(to_db(rec.sim_ci95_low)) << ','
           << format_double(to_db(rec.sim_ci95_high)) << ',' << format_double(rec.abs_err) << ','
           << format_double(rec.rel_err) << ',' << (rec.within_ci ? "true" : "false") << ','
           << rec.trials << ',' << rec.seed << '\n';
    }
}

inline nlohmann::ordered_json sweep_to_json(const std::vector<analysis::SweepRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const analysis::SweepRecord& rec : records) {
        nlohmann::ordered_json obj;
        obj["rho"] = rec.rho;
        obj["r"] = rec.r;
        obj["theory_paper_db"] = to_db(rec.theory_paper);
        obj["theory_exact_db"] = to_db(rec.theory_exact);
        obj["sim_mean_db"] = to_db(rec.sim_mean);
        obj["sim_ci95_low_db"] = to_db(rec.sim_ci95_low);
        obj["sim_ci95_high_db"] = to_db(rec.sim_ci95_high);
        obj["abs_err"] = rec.abs_err;
        obj["rel_err"] = rec.rel_err;
        obj["within_ci"] = rec.within_ci;
        obj["trials"] = rec.trials;
        obj["seed"] = rec.seed;
        arr.push_back(std::move(obj));
    }
    return arr;
}

inline void write_sweep_json(std::ostream& os, const std::vector<analysis::SweepRecord>& records) {
    os << sweep_to_json(records).dump(2) << '\n';
}

struct OutageRecord {
    double rho;
    double r;
    double threshold_db;
    double analytic;
    double empirical;
    double abs_err;
    std::uint64_t trials;
    std::uint64_t seed;
};

inline constexpr std::string_view outage_csv_header =
    "rho,r,threshold_db,analytic,empirical,abs_err,trials,seed";

inline void write_outage_csv(std::ostream& os, const std::vector<OutageRecord>& records) {
    os << outage_csv_header << '\n';
    for (const OutageRecord& rec : records) {
        os << format_double(rec.rho) << ',' << format_double(rec.r) << ','
           << format_double(rec.threshold_db) << ',' << format_double(rec.analytic) << ','
           << format_double(rec.empirical) << ',' << format_double(rec.abs_err) << ','
           << rec.trials << ',' << rec.seed << '\n';
    }
}

inline void write_outage_json(std::ostream& os, const std::vector<OutageRecord>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const OutageRecord& rec : records) {
        nlohmann::ordered_json obj;
        obj["rho"] = rec.rho;
        obj["r"] = rec.r;
        obj["threshold_db"] = rec.threshold_db;
        obj["analytic"] = rec.analytic;
        obj["empirical"] = rec.empirical;
        obj["abs_err"] = rec.abs_err;
        obj["trials"] = rec.trials;
        obj["seed"] = rec.seed;
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

namespace detail {

template <class WriteFn>
void emit_to_path(const std::string& path, WriteFn&& write) {
    if (path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    write(file);
    if (!file) {
        throw std::runtime_error("write failed for output file: " + path);
    }
}

}  // namespace detail

inline void emit_results(const std::vector<analysis::SweepRecord>& records, Format format,
                         const std::string& path) {
    if (records.empty()) throw std::invalid_argument("emit_results: no records");
    detail::emit_to_path(path, [&](std::ostream& os) {
        format == Format::csv ? write_sweep_csv(os, records) : write_sweep_json(os, records);
    });
}

inline void emit_results(const std::vector<OutageRecord>& records, Format format,
                         const std::string& path) {
    if (records.empty()) throw std::invalid_argument("emit_results: no records");
    detail::emit_to_path(path, [&](std::ostream& os) {
        format == Format::csv ? write_outage_csv(os, records) : write_outage_json(os, records);
    });
}

}  // namespace blockage::io
