#include "sbr/mps.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

namespace sbr {

namespace {

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string pad(const std::string& s, std::size_t width) {
    if (s.size() >= width) return s + "  ";
    return s + std::string(width - s.size() + 2, ' ');
}

char sense_char(RowSense s) {
    switch (s) {
        case RowSense::LE: return 'L';
        case RowSense::GE: return 'G';
        case RowSense::EQ: return 'E';
    }
    return 'N';
}

}  // namespace

std::string write_mps(const ModelInstance& model) {
    std::size_t width = 8;
    for (const auto& v : model.vars) width = std::max(width, v.name.size());
    for (const auto& r : model.rows) width = std::max(width, r.name.size());

    std::string out;
    out += "NAME          " + model.name + "\n";
    out += "OBJSENSE\n";
    out += model.minimize ? "    MIN\n" : "    MAX\n";

    out += "ROWS\n";
    out += " N  COST\n";
    for (const auto& row : model.rows)
        out += std::string(" ") + sense_char(row.sense) + "  " + row.name + "\n";

    // Column-major entries, one contiguous run per variable.
    std::vector<std::vector<std::pair<const std::string*, double>>> columns(
        model.vars.size());
    for (const auto& row : model.rows)
        for (const auto& [v, coeff] : row.terms)
            columns[static_cast<std::size_t>(v)].push_back({&row.name, coeff});

    out += "COLUMNS\n";
    bool in_integer_run = false;
    int marker = 0;
    for (std::size_t v = 0; v < model.vars.size(); ++v) {
        const auto& var = model.vars[v];
        const bool integral = var.type == VarType::Binary;
        if (integral != in_integer_run) {
            out += "    " + pad("MARKER" + std::to_string(marker++), width) +
                   pad("'MARKER'", width) +
                   (integral ? "'INTORG'" : "'INTEND'") + "\n";
            in_integer_run = integral;
        }
        // Declare every column at least once; unused ones carry a zero
        // objective entry so parsers still see them.
        if (var.obj != 0.0 || (columns[v].empty() && var.declared_only))
            out += "    " + pad(var.name, width) + pad("COST", width) + fmt(var.obj) + "\n";
        for (const auto& [row_name, coeff] : columns[v])
            out += "    " + pad(var.name, width) + pad(*row_name, width) + fmt(coeff) + "\n";
    }
    if (in_integer_run)
        out += "    " + pad("MARKER" + std::to_string(marker++), width) +
               pad("'MARKER'", width) + "'INTEND'\n";

    out += "RHS\n";
    for (const auto& row : model.rows)
        if (row.rhs != 0.0)
            out += "    " + pad("RHS", width) + pad(row.name, width) + fmt(row.rhs) + "\n";

    out += "BOUNDS\n";
    for (const auto& var : model.vars) {
        if (var.type == VarType::Binary) {
            out += " BV " + pad("BND", width) + var.name + "\n";
            continue;
        }
        if (var.lb == var.ub) {
            out += " FX " + pad("BND", width) + pad(var.name, width) + fmt(var.lb) + "\n";
            continue;
        }
        if (var.lb != 0.0)
            out += " LO " + pad("BND", width) + pad(var.name, width) + fmt(var.lb) + "\n";
        out += " UP " + pad("BND", width) + pad(var.name, width) + fmt(var.ub) + "\n";
    }
    out += "ENDATA\n";
    return out;
}

void export_model(const ModelInstance& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ModelError("cannot write " + path.string());
    out << write_mps(model);
    if (!out) throw ModelError("I/O failure writing " + path.string());
}

}  // namespace sbr
