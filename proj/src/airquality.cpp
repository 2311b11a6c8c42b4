#include "leoiot/airquality.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace leoiot::airquality {

Pollutant parse_pollutant(const std::string& name) {
    if (name == "pm25" || name == "PM2.5" || name == "pm2.5") return Pollutant::Pm25;
    if (name == "pm10" || name == "PM10") return Pollutant::Pm10;
    throw std::invalid_argument("airquality: unknown pollutant '" + name + "'");
}

std::string to_string(Pollutant p) { return p == Pollutant::Pm25 ? "pm25" : "pm10"; }

BreakpointTable BreakpointTable::cpcb_default() {
    BreakpointTable t;
    t.pm25_ = {{0, 30, 0, 50},    {30, 60, 50, 100},   {60, 90, 100, 200},
               {90, 120, 200, 300}, {120, 250, 300, 400}, {250, 380, 400, 500}};
    t.pm10_ = {{0, 50, 0, 50},     {50, 100, 50, 100},  {100, 250, 100, 200},
               {250, 350, 200, 300}, {350, 430, 300, 400}, {430, 510, 400, 500}};
    t.validate();
    return t;
}

const std::vector<Band>& BreakpointTable::bands(Pollutant p) const {
    return p == Pollutant::Pm25 ? pm25_ : pm10_;
}

std::vector<Band>& BreakpointTable::bands(Pollutant p) {
    return p == Pollutant::Pm25 ? pm25_ : pm10_;
}

void BreakpointTable::validate() const {
    for (Pollutant p : {Pollutant::Pm25, Pollutant::Pm10}) {
        const auto& bs = bands(p);
        if (bs.empty()) throw std::invalid_argument("airquality: no bands for " + to_string(p));
        double prev_hi = bs.front().b_lo;
        for (const Band& b : bs) {
            if (!(b.b_lo < b.b_hi))
                throw std::invalid_argument("airquality: band requires b_lo < b_hi for " + to_string(p));
            if (!(b.i_lo <= b.i_hi))
                throw std::invalid_argument("airquality: band requires i_lo <= i_hi for " + to_string(p));
            if (b.b_lo != prev_hi)
                throw std::invalid_argument("airquality: bands must be contiguous for " + to_string(p));
            prev_hi = b.b_hi;
        }
    }
}

BreakpointTable BreakpointTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("airquality: cannot open breakpoint table '" + path + "'");
    BreakpointTable t;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string pol;
        if (!(ss >> pol)) continue;  // blank line
        Band b{};
        if (!(ss >> b.b_lo >> b.b_hi >> b.i_lo >> b.i_hi))
            throw std::runtime_error("airquality: bad band at " + path + ":" + std::to_string(lineno));
        t.bands(parse_pollutant(pol)).push_back(b);
    }
    t.validate();
    return t;
}

void BreakpointTable::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("airquality: cannot write '" + path + "'");
    out << "# pollutant b_lo b_hi i_lo i_hi\n";
    for (Pollutant p : {Pollutant::Pm25, Pollutant::Pm10})
        for (const Band& b : bands(p))
            out << to_string(p) << ' ' << b.b_lo << ' ' << b.b_hi << ' ' << b.i_lo << ' ' << b.i_hi
                << '\n';
}

double sub_index(double concentration, Pollutant p, const BreakpointTable& table) {
    if (!(concentration >= 0.0) || !std::isfinite(concentration))
        throw std::invalid_argument("airquality: concentration must be finite and >= 0");
    const auto& bs = table.bands(p);
    for (const Band& b : bs) {
        if (concentration <= b.b_hi)
            return (b.i_hi - b.i_lo) / (b.b_hi - b.b_lo) * (concentration - b.b_lo) + b.i_lo;
    }
    return 500.0;  // above the top band
}

AqiResult aqi(double pm25, double pm10, const BreakpointTable& table) {
    AqiResult r{};
    r.sub_pm25 = sub_index(pm25, Pollutant::Pm25, table);
    r.sub_pm10 = sub_index(pm10, Pollutant::Pm10, table);
    if (r.sub_pm25 >= r.sub_pm10) {
        r.aqi = r.sub_pm25;
        r.dominant = Pollutant::Pm25;
    } else {
        r.aqi = r.sub_pm10;
        r.dominant = Pollutant::Pm10;
    }
    return r;
}

}  // namespace leoiot::airquality
