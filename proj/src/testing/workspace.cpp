#include "namemine/testing/workspace.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "namemine/rng.hpp"
#include "namemine/testing/fixtures.hpp"

namespace namemine::testing {

namespace {

struct Family {
    std::string_view name;
    std::string_view pattern;  // method name
    std::string_view body;     // {NAME}, {N} noun, {n} lower-case noun
};

const std::vector<Family>& families() {
    static const std::vector<Family> table = {
        {"count", "count{N}s",
         "    int {NAME}(List<{N}> {n}s) {\n"
         "        int total = 0;\n"
         "        for ({N} {n} : {n}s) {\n"
         "            if ({n}.isActive()) {\n"
         "                total++;\n"
         "            }\n"
         "        }\n"
         "        return total;\n"
         "    }\n"},
        {"find", "find{N}ById",
         "    {N} {NAME}(List<{N}> {n}s, long id) {\n"
         "        for ({N} {n} : {n}s) {\n"
         "            if ({n}.getId() == id) {\n"
         "                return {n};\n"
         "            }\n"
         "        }\n"
         "        return null;\n"
         "    }\n"},
        {"remove", "remove{N}",
         "    boolean {NAME}(Map<Long, {N}> {n}Index, long key) {\n"
         "        return {n}Index.remove(key) != null;\n"
         "    }\n"},
        {"valid", "isValid{N}",
         "    boolean {NAME}({N} {n}) {\n"
         "        return {n} != null && {n}.getName() != null && !{n}.getName().isEmpty();\n"
         "    }\n"},
        {"format", "format{N}",
         "    String {NAME}({N} {n}) {\n"
         "        StringBuilder sb = new StringBuilder();\n"
         "        sb.append(\"{N}[\");\n"
         "        sb.append({n}.getName());\n"
         "        sb.append(\"]\");\n"
         "        return sb.toString();\n"
         "    }\n"},
        {"total", "total{N}Weight",
         "    double {NAME}(List<{N}> {n}s) {\n"
         "        double sum = 0.0;\n"
         "        for ({N} {n} : {n}s) {\n"
         "            sum += {n}.getWeight();\n"
         "        }\n"
         "        return sum;\n"
         "    }\n"},
        {"sort", "sort{N}sByName",
         "    void {NAME}(List<{N}> {n}s) {\n"
         "        {n}s.sort(Comparator.comparing({N}::getName));\n"
         "    }\n"},
        {"has", "has{N}Named",
         "    boolean {NAME}(Set<String> {n}Names, String name) {\n"
         "        return {n}Names.contains(name.trim().toLowerCase());\n"
         "    }\n"},
        {"copy", "copy{N}s",
         "    List<{N}> {NAME}(List<{N}> {n}s) {\n"
         "        List<{N}> result = new ArrayList<>({n}s.size());\n"
         "        result.addAll({n}s);\n"
         "        return result;\n"
         "    }\n"},
        {"latest", "latest{N}",
         "    {N} {NAME}(List<{N}> {n}s) {\n"
         "        {N} best = null;\n"
         "        for ({N} {n} : {n}s) {\n"
         "            if (best == null || {n}.getTimestamp() > best.getTimestamp()) {\n"
         "                best = {n};\n"
         "            }\n"
         "        }\n"
         "        return best;\n"
         "    }\n"},
    };
    return table;
}

const Family& family(std::string_view name) {
    for (const auto& f : families()) {
        if (f.name == name) return f;
    }
    throw std::invalid_argument("unknown method family " + std::string(name));
}

void replace_all(std::string& text, std::string_view from, std::string_view to) {
    for (auto pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size())) {
        text.replace(pos, from.size(), to);
    }
}

std::string lower_first(std::string_view noun) {
    std::string out(noun);
    if (!out.empty()) out[0] = static_cast<char>(out[0] - 'A' + 'a');
    return out;
}

struct Placed {
    std::string family;
    std::string name;
    bool edited = false;
};

std::string class_source(const std::string& package, const std::string& noun, const std::vector<Placed>& methods) {
    std::string out = "package com." + package + ";\n\nimport java.util.*;\n\npublic class " + noun + "Service {\n";
    for (std::size_t i = 0; i < methods.size(); ++i) {
        if (i > 0) out += "\n";
        std::string body = family_method(methods[i].family, noun, methods[i].name);
        // The edit keeps the method's identity: same key, new body.
        if (methods[i].edited) replace_all(body, "{\n", "{\n        Objects.requireNonNull(this);\n");
        out += body;
    }
    return out + "}\n";
}

}  // namespace

const std::vector<std::string_view>& method_families() {
    static const std::vector<std::string_view> names = [] {
        std::vector<std::string_view> out;
        for (const auto& f : families()) out.push_back(f.name);
        return out;
    }();
    return names;
}

std::string family_method_name(std::string_view family_name, std::string_view noun) {
    std::string name(family(family_name).pattern);
    replace_all(name, "{N}", noun);
    return name;
}

std::string family_method(std::string_view family_name, std::string_view noun, std::string_view name) {
    const auto& f = family(family_name);
    std::string text(f.body);
    replace_all(text, "{NAME}", name.empty() ? family_method_name(family_name, noun) : std::string(name));
    replace_all(text, "{N}", noun);
    replace_all(text, "{n}", lower_first(noun));
    return text;
}

void make_project(const std::filesystem::path& dir, const ProjectLayout& layout) {
    FixtureRepo repo(dir);
    std::vector<std::pair<std::string, std::string>> order;  // (family, noun)
    for (const auto& noun : layout.nouns) {
        for (auto f : method_families()) order.emplace_back(std::string(f), noun);
    }
    SplitMix64 rng(layout.seed);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.bounded(i)]);

    std::map<std::string, std::vector<Placed>> classes;
    std::map<std::string, std::string> files;
    for (const auto& noun : layout.nouns) files[noun] = "src/main/java/com/" + layout.name + "/" + noun + "Service.java";
    auto flush = [&](const std::string& noun) {
        repo.write(files.at(noun), class_source(layout.name, noun, classes.at(noun)));
    };

    if (layout.single_commit) {
        for (const auto& [f, noun] : order) classes[noun].push_back({f, family_method_name(f, noun)});
        for (const auto& [noun, _] : classes) flush(noun);
        repo.commit("Import " + layout.name);
        return;
    }

    const std::size_t per = std::max<std::size_t>(1, layout.methods_per_commit);
    const std::size_t batches = (order.size() + per - 1) / per;
    for (std::size_t b = 0; b < batches; ++b) {
        std::vector<std::string> touched;
        for (std::size_t i = b * per; i < std::min(order.size(), (b + 1) * per); ++i) {
            const auto& [f, noun] = order[i];
            classes[noun].push_back({f, family_method_name(f, noun)});
            touched.push_back(noun);
        }
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (const auto& noun : touched) flush(noun);
        repo.commit("Add methods, batch " + std::to_string(b + 1));

        // Identity-preserving commits, each on its own.
        if (b == batches / 4) {
            for (auto& [noun, methods] : classes) {
                auto it = std::find_if(methods.begin(), methods.end(), [](const Placed& p) { return p.family == "copy"; });
                if (it == methods.end()) continue;
                it->name = "clone" + noun + "s";
                flush(noun);
                repo.commit("Rename copy" + noun + "s");
                break;
            }
        } else if (b == batches / 2) {
            const auto& noun = layout.nouns.front();
            const auto moved = "src/main/java/com/" + layout.name + "/legacy/" + noun + "Service.java";
            repo.move(files.at(noun), moved);
            files[noun] = moved;
            repo.commit("Move " + noun + "Service");
        } else if (b == (3 * batches) / 5) {
            auto& methods = classes.at(layout.nouns.back());
            if (!methods.empty()) {
                methods.front().edited = true;
                flush(layout.nouns.back());
                repo.commit("Harden " + methods.front().name);
            }
        }
    }

    if (layout.with_duplicates) {
        // Both sources were added early enough to be training methods and
        // were never renamed or edited.
        auto early = [&](std::string_view fam) {
            auto it = std::find_if(order.begin(), order.end(), [&](const auto& e) {
                return (fam.empty() ? e.first != "copy" && e.first != "count" : e.first == fam) &&
                       e.second != layout.nouns.back();
            });
            if (it == order.end()) throw std::invalid_argument("layout too small for duplicates");
            return *it;
        };
        const auto [exact_family, exact_noun] = early("");
        const auto [case_family, case_noun] = early("count");
        std::string variant = family_method(case_family, case_noun);
        replace_all(variant, "total", "Total");
        repo.write("src/main/java/com/" + layout.name + "/audit/AuditService.java",
                   "package com." + layout.name + ".audit;\n\nimport java.util.*;\n\npublic class AuditService {\n" +
                       family_method(exact_family, exact_noun) + "\n" + variant + "}\n");
        repo.commit("Add audit helpers");
    }
}

std::vector<ProjectLayout> workspace_layouts() {
    return {
        {"alpha",
         {"Apple",   "Order",   "Invoice", "Customer", "Ticket",  "Account", "Payment", "Shipment", "Product", "Review",
          "Coupon",  "Device",  "Session", "Report",   "Message", "Contract", "Vehicle", "Booking",  "Lesson",  "Recipe",
          "Artist",  "Album",   "Player",  "Team",     "Sensor",  "Reading", "Patient", "Doctor",   "Visit",   "Course"},
         11, 5, false, true},
        {"beta",
         {"Student", "Grade",  "Tenant", "Lease",  "Garden", "Flower", "Engine", "Module", "Widget", "Folder",
          "Badge",   "Camera", "Photo",  "Planet", "Rocket", "Signal", "Route",  "Driver", "Parcel", "Window",
          "Button",  "Layer",  "Shader", "Sample", "Voter"},
         23, 4, false},
        {"gamma", {"Ledger", "Entry", "Budget", "Expense"}, 37, 5, true},
    };
}

void make_workspace(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& layout : workspace_layouts()) make_project(dir / layout.name, layout);
}

}  // namespace namemine::testing
