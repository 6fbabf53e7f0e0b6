#include "cli/result_doc.hpp"

#include <cstdio>
#include <sstream>

#include "hardysim/version.hpp"

namespace hardysim::cli {

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string counts_json(const std::vector<int>& counts) {
    std::string out = "[";
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(counts[i]);
    }
    return out + "]";
}

std::string labels_json(const std::vector<std::string>& labels) {
    std::string out = "[";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ",";
        out += "\"" + json_escape(labels[i]) + "\"";
    }
    return out + "]";
}

std::string header_json(const char* document) {
    std::ostringstream os;
    os << "\"tool\":\"" << kToolName << "\",\"version\":\"" << kToolVersion
       << "\",\"document\":\"" << document << "\"";
    return os.str();
}

void witness_fields(std::ostream& os, const HardyWitness& w) {
    os << "\"witness\":{"
       << "\"p_joint_nn\":" << render_double(w.p_joint_nn) << ","
       << "\"p_zero_hn\":" << render_double(w.p_zero_hn) << ","
       << "\"p_zero_nh\":" << render_double(w.p_zero_nh) << ","
       << "\"p4\":" << render_double(w.p4) << "},"
       << "\"verdict\":" << (w.contradiction ? "true" : "false");
}

}  // namespace

std::string render_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string params_json(const SchemeParams& p) {
    std::ostringstream os;
    os << "{\"alpha\":" << render_double(p.alpha_mag) << ",\"phi\":" << render_double(p.phi)
       << ",\"mode\":\"" << (p.mode == SimMode::full ? "full" : "ideal") << "\""
       << ",\"tail_threshold\":" << render_double(p.tail_threshold)
       << ",\"prune_eps\":" << render_double(p.prune_eps)
       << ",\"cutoff\":" << p.cutoff_override << ",\"cutoff_extra\":" << p.cutoff_extra
       << ",\"tol\":" << render_double(p.tol) << "}";
    return os.str();
}

std::string distribution_json(const OutcomeDistribution& dist) {
    std::ostringstream os;
    os << "{\"modes\":" << labels_json(dist.mode_labels) << ",\"entries\":[";
    bool first = true;
    double floored = 0.0;
    for (const auto& [counts, p] : dist.entries) {
        if (p < kOutputFloor) {
            floored += p;
            continue;
        }
        if (!first) os << ",";
        first = false;
        os << "{\"counts\":" << counts_json(counts) << ",\"probability\":" << render_double(p)
           << "}";
    }
    os << "],\"residual\":" << render_double(dist.residual + floored) << "}";
    return os.str();
}

std::string trace_json(const ExecutionTrace& trace) {
    std::ostringstream os;
    os << "{\"steps\":[";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        if (i) os << ",";
        os << "{\"description\":\"" << json_escape(trace.steps[i].description)
           << "\",\"probability\":" << render_double(trace.steps[i].probability) << "}";
    }
    os << "],\"cumulative\":" << render_double(trace.cumulative) << "}";
    return os.str();
}

std::string hardy_document_json(const SchemeParams& p, const HardyStatistics& stats) {
    std::ostringstream os;
    os << "{" << header_json("hardy") << ",\"params\":" << params_json(p) << ",\"experiments\":[";
    for (int n = 0; n < 4; ++n) {
        if (n) os << ",";
        os << distribution_json(stats.experiments[n]);
    }
    os << "],";
    witness_fields(os, stats.witness);
    os << ",\"trace\":" << trace_json(stats.trace)
       << ",\"norm_deficit\":" << render_double(stats.total_norm_deficit) << "}\n";
    return os.str();
}

namespace {

void csv_params(std::ostream& os, const SchemeParams& p) {
    os << "tool," << kToolName << "\n"
       << "version," << kToolVersion << "\n"
       << "alpha," << render_double(p.alpha_mag) << "\n"
       << "phi," << render_double(p.phi) << "\n"
       << "mode," << (p.mode == SimMode::full ? "full" : "ideal") << "\n"
       << "tail_threshold," << render_double(p.tail_threshold) << "\n"
       << "prune_eps," << render_double(p.prune_eps) << "\n"
       << "cutoff," << p.cutoff_override << "\n"
       << "cutoff_extra," << p.cutoff_extra << "\n"
       << "tol," << render_double(p.tol) << "\n";
}

void csv_table(std::ostream& os, const OutcomeDistribution& dist) {
    for (std::size_t i = 0; i < dist.mode_labels.size(); ++i) {
        if (i) os << ",";
        os << dist.mode_labels[i];
    }
    os << ",probability\n";
    double floored = 0.0;
    for (const auto& [counts, p] : dist.entries) {
        if (p < kOutputFloor) {
            floored += p;
            continue;
        }
        for (int c : counts) os << c << ",";
        os << render_double(p) << "\n";
    }
    os << "# residual = " << render_double(dist.residual + floored) << "\n";
}

}  // namespace

std::string hardy_document_csv(const SchemeParams& p, const HardyStatistics& stats) {
    std::ostringstream os;
    os << "key,value\n";
    csv_params(os, p);
    os << "p_joint_nn," << render_double(stats.witness.p_joint_nn) << "\n"
       << "p_zero_hn," << render_double(stats.witness.p_zero_hn) << "\n"
       << "p_zero_nh," << render_double(stats.witness.p_zero_nh) << "\n"
       << "p4," << render_double(stats.witness.p4) << "\n"
       << "verdict," << (stats.witness.contradiction ? "true" : "false") << "\n"
       << "trace_cumulative," << render_double(stats.trace.cumulative) << "\n"
       << "norm_deficit," << render_double(stats.total_norm_deficit) << "\n";
    return os.str();
}

std::string experiment_document_json(const SchemeParams& p, int n, const ExperimentResult& er) {
    std::ostringstream os;
    os << "{" << header_json("experiment") << ",\"experiment_number\":" << n
       << ",\"params\":" << params_json(p) << ",\"table\":" << distribution_json(er.distribution)
       << ",\"trace\":" << trace_json(er.trace)
       << ",\"norm_deficit\":" << render_double(er.total_norm_deficit) << "}\n";
    return os.str();
}

std::string experiment_document_csv(const SchemeParams& p, int n, const ExperimentResult& er) {
    (void)p;
    (void)n;
    std::ostringstream os;
    csv_table(os, er.distribution);
    return os.str();
}

std::string sweep_document_json(const SchemeParams& base, const std::string& axis,
                                const std::vector<double>& values,
                                const std::vector<std::string>& point_docs,
                                const SweepSummary& summary) {
    std::ostringstream os;
    os << "{" << header_json("sweep") << ",\"axis\":\"" << json_escape(axis) << "\",\"values\":[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ",";
        os << render_double(values[i]);
    }
    os << "],\"params\":" << params_json(base) << ",\"points\":[";
    for (std::size_t i = 0; i < point_docs.size(); ++i) {
        if (i) os << ",";
        // Point documents end with a newline; trim it for embedding.
        std::string doc = point_docs[i];
        while (!doc.empty() && doc.back() == '\n') doc.pop_back();
        os << doc;
    }
    os << "],\"summary\":{\"max_abs_deviation_vs_first\":"
       << render_double(summary.max_abs_deviation_vs_first)
       << ",\"max_tv_exp4_vs_first\":" << render_double(summary.max_tv_exp4_vs_first) << "}}\n";
    return os.str();
}

std::string sweep_summary_csv(const std::string& axis, const std::vector<double>& values,
                              const SweepSummary& summary) {
    std::ostringstream os;
    os << "axis,n_points,max_abs_deviation_vs_first,max_tv_exp4_vs_first\n"
       << axis << "," << values.size() << "," << render_double(summary.max_abs_deviation_vs_first)
       << "," << render_double(summary.max_tv_exp4_vs_first) << "\n";
    return os.str();
}

std::string sample_document_json(const SchemeParams& p, int n, long long shots,
                                 unsigned long long seed,
                                 const std::vector<std::string>& mode_labels,
                                 const std::vector<SampleRow>& rows) {
    std::ostringstream os;
    os << "{" << header_json("sample") << ",\"experiment_number\":" << n
       << ",\"params\":" << params_json(p) << ",\"shots\":" << shots << ",\"seed\":" << seed
       << ",\"generator\":\"mt19937_64\",\"modes\":" << labels_json(mode_labels)
       << ",\"outcomes\":[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) os << ",";
        os << "{\"counts\":" << counts_json(rows[i].counts) << ",\"count\":" << rows[i].hits
           << ",\"frequency\":" << render_double(rows[i].frequency)
           << ",\"wilson_low\":" << render_double(rows[i].wilson_low)
           << ",\"wilson_high\":" << render_double(rows[i].wilson_high) << "}";
    }
    os << "]}\n";
    return os.str();
}

std::string sample_document_csv(const SchemeParams& p, int n, long long shots,
                                unsigned long long seed,
                                const std::vector<std::string>& mode_labels,
                                const std::vector<SampleRow>& rows) {
    (void)p;
    (void)n;
    std::ostringstream os;
    for (const auto& l : mode_labels) os << l << ",";
    os << "count,frequency,wilson_low,wilson_high\n";
    for (const auto& row : rows) {
        for (int c : row.counts) os << c << ",";
        os << row.hits << "," << render_double(row.frequency) << ","
           << render_double(row.wilson_low) << "," << render_double(row.wilson_high) << "\n";
    }
    os << "# shots = " << shots << ", seed = " << seed << "\n";
    return os.str();
}

}  // namespace hardysim::cli
