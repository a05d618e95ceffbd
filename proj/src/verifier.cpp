#include "proofforge/verifier.hpp"

#include "proofforge/dafny_source.hpp"
#include "proofforge/errors.hpp"
#include "proofforge/exchange.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace proofforge::verifier {

namespace {

bool contains(const std::string& haystack, const char* needle) {
    return haystack.find(needle) != std::string::npos;
}

diagnostic_kind classify_message(const std::string& message) {
    if (contains(message, "timed out") || contains(message, "out of resource") ||
        contains(message, "Out of resource") || contains(message, "time limit")) {
        return diagnostic_kind::timeout;
    }
    if (contains(message, "invariant")) {
        if (contains(message, "entry") || contains(message, "on entrance")) {
            return diagnostic_kind::invariant_on_entry;
        }
        if (contains(message, "maintained") || contains(message, "maintenance")) {
            return diagnostic_kind::invariant_maintenance;
        }
    }
    if (contains(message, "postcondition")) {
        return diagnostic_kind::postcondition_failure;
    }
    if (contains(message, "precondition")) {
        return diagnostic_kind::precondition_call_failure;
    }
    if (contains(message, "assertion might not hold") ||
        contains(message, "assertion could not be proved") ||
        contains(message, "assertion violation")) {
        return diagnostic_kind::assertion_failure;
    }
    // Parser messages: "rbrace expected", "semicolon expected", "invalid
    // UnaryExpression", "this symbol not expected", ...
    if (contains(message, "expected") || contains(message, "Parse error") ||
        contains(message, "parse error") || contains(message, "invalid ") ||
        contains(message, "EOF") || contains(message, "cannot be used as an identifier")) {
        return diagnostic_kind::syntax_error;
    }
    if (contains(message, "unresolved identifier") || contains(message, "Unresolved identifier") ||
        contains(message, "unknown type") || contains(message, "does not exist") ||
        contains(message, "not found") || contains(message, "incorrect type") ||
        contains(message, "type mismatch") || contains(message, "wrong number of") ||
        contains(message, "duplicate name") || contains(message, "Duplicate") ||
        contains(message, "denotes") || contains(message, "undeclared")) {
        return diagnostic_kind::resolution_error;
    }
    return diagnostic_kind::unknown;
}

const std::regex located_error_line(R"(^(.*?)\((\d+),(\d+)\): (Error|error)(:?) ?(.*)$)");
const std::regex bare_error_line(R"(^\s*(Error|\*\*\* Error)(:?) ?(.*)$)");

} // namespace

std::vector<diagnostic> classify_diagnostics(const std::string& raw_output, int exit_code) {
    std::vector<diagnostic> diagnostics;
    std::istringstream stream(raw_output);
    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::smatch match;
        if (std::regex_match(line, match, located_error_line)) {
            diagnostic diag;
            diag.file = match[1];
            diag.line = std::stoi(match[2]);
            diag.column = std::stoi(match[3]);
            diag.message = line;
            diag.kind = classify_message(match[6]);
            diagnostics.push_back(std::move(diag));
        } else if (std::regex_match(line, match, bare_error_line)) {
            diagnostic diag;
            diag.message = line;
            diag.kind = classify_message(match[3]);
            diagnostics.push_back(std::move(diag));
        }
    }
    (void)exit_code;
    return diagnostics;
}

std::string declare_bodiless(const std::string& program_text,
                             const std::vector<method_signature>& signatures) {
    if (signatures.empty()) return program_text;

    dafny::program prog = dafny::parse_program(program_text);
    std::string out = program_text;
    for (const auto& signature : signatures) {
        const dafny::declaration* existing = prog.find(signature.name);
        if (existing != nullptr) {
            if (existing->has_body) {
                throw error("declare_bodiless: '" + signature.name +
                            "' is already defined with a body");
            }
            continue; // already declared body-less; idempotent
        }
        if (!out.empty() && out.back() != '\n') out += "\n";
        out += "\n" + signature.render_bodiless();
        prog = dafny::parse_program(out);
    }
    return out;
}

std::string render_for_verification(const std::string& program_text,
                                    const std::vector<method_signature>& pending) {
    if (pending.empty()) return program_text;

    std::string out = program_text;
    std::vector<method_signature> missing;
    for (const auto& signature : pending) {
        dafny::program prog = dafny::parse_program(out);
        const dafny::declaration* decl = prog.find(signature.name);
        if (decl == nullptr) {
            missing.push_back(signature);
        } else if (decl->has_body) {
            out = dafny::replace_declaration(prog, *decl, signature.render_bodiless());
        }
    }
    return declare_bodiless(out, missing);
}

// ---------------------------------------------------------------------------
// Dafny subprocess backend.

namespace {

struct process_result {
    int exit_code = -1;
    bool killed_on_timeout = false;
    std::string output; // stdout and stderr combined
    double wall_seconds = 0.0;
};

process_result run_process(const std::vector<std::string>& argv, int timeout_seconds) {
    int pipe_fds[2];
    if (pipe(pipe_fds) != 0) {
        throw environment_error("pipe() failed: " + std::string(std::strerror(errno)));
    }

    auto started = std::chrono::steady_clock::now();
    pid_t pid = fork();
    if (pid < 0) {
        close(pipe_fds[0]);
        close(pipe_fds[1]);
        throw environment_error("fork() failed: " + std::string(std::strerror(errno)));
    }
    if (pid == 0) {
        // Child: merge stdout/stderr into the pipe and exec.
        dup2(pipe_fds[1], STDOUT_FILENO);
        dup2(pipe_fds[1], STDERR_FILENO);
        close(pipe_fds[0]);
        close(pipe_fds[1]);
        std::vector<char*> raw;
        raw.reserve(argv.size() + 1);
        for (const auto& arg : argv) raw.push_back(const_cast<char*>(arg.c_str()));
        raw.push_back(nullptr);
        execvp(raw[0], raw.data());
        std::fprintf(stderr, "exec failed: %s\n", std::strerror(errno));
        _exit(127);
    }

    close(pipe_fds[1]);
    fcntl(pipe_fds[0], F_SETFL, O_NONBLOCK);

    process_result result;
    // Grace window past the verifier's own limit before the hard kill.
    auto deadline = started + std::chrono::seconds(timeout_seconds + 2);
    bool exited = false;
    char buffer[4096];

    while (true) {
        pollfd pfd{pipe_fds[0], POLLIN, 0};
        auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                             deadline - std::chrono::steady_clock::now())
                             .count();
        int timeout_ms = remaining > 0 ? static_cast<int>(std::min<long long>(remaining, 200)) : 0;
        int ready = poll(&pfd, 1, timeout_ms);
        if (ready > 0 && (pfd.revents & (POLLIN | POLLHUP)) != 0) {
            ssize_t n;
            while ((n = read(pipe_fds[0], buffer, sizeof(buffer))) > 0) {
                result.output.append(buffer, static_cast<std::size_t>(n));
            }
            if (n == 0 && (pfd.revents & POLLHUP) != 0) {
                break; // writer closed
            }
        }
        int status = 0;
        pid_t waited = waitpid(pid, &status, WNOHANG);
        if (waited == pid) {
            exited = true;
            result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
            break;
        }
        if (std::chrono::steady_clock::now() >= deadline) {
            kill(pid, SIGKILL);
            result.killed_on_timeout = true;
            int status = 0;
            waitpid(pid, &status, 0);
            exited = true;
            result.exit_code = 128 + SIGKILL;
            break;
        }
    }
    // Drain whatever is left in the pipe.
    ssize_t n;
    while ((n = read(pipe_fds[0], buffer, sizeof(buffer))) > 0) {
        result.output.append(buffer, static_cast<std::size_t>(n));
    }
    close(pipe_fds[0]);
    if (!exited) {
        int status = 0;
        waitpid(pid, &status, 0);
        result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

std::string write_temp_program(const std::string& program_text) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "proofforge";
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::string name = "snapshot_" + fnv1a_hex(program_text) + "_" +
                       std::to_string(::getpid()) + ".dfy";
    fs::path path = dir / name;
    std::ofstream out(path);
    out << program_text;
    out.close();
    return path.string();
}

} // namespace

dafny_subprocess::dafny_subprocess(std::string executable) : _executable(std::move(executable)) {
    if (_executable.empty()) {
        throw environment_error(
            "no Dafny executable configured; set PF_DAFNY_PATH or put 'dafny' on PATH");
    }
}

verifier_report dafny_subprocess::run(const std::string& program_text, int timeout_seconds) {
    if (program_text.empty()) {
        throw usage_error("run_verifier: program text is empty");
    }
    namespace fs = std::filesystem;
    if (_executable.find('/') != std::string::npos && !fs::exists(_executable)) {
        throw environment_error("Dafny executable not found: " + _executable);
    }

    std::string path = write_temp_program(program_text);
    _last_argv = {
        _executable,
        "verify",
        "--verification-time-limit",
        std::to_string(timeout_seconds),
        "--allow-warnings",
        path,
    };

    process_result proc = run_process(_last_argv, timeout_seconds);
    std::error_code ec;
    fs::remove(path, ec);

    if (proc.exit_code == 127) {
        throw environment_error("could not execute Dafny at '" + _executable +
                                "': " + proc.output);
    }

    verifier_report report;
    report.raw_output = proc.output;
    report.wall_time_seconds = proc.wall_seconds;
    report.diagnostics = classify_diagnostics(proc.output, proc.exit_code);

    if (proc.killed_on_timeout) {
        report.status = verifier_status::timeout;
        if (report.diagnostics.empty()) {
            diagnostic timeout_diag;
            timeout_diag.kind = diagnostic_kind::timeout;
            timeout_diag.message = "verifier killed after exceeding the time limit of " +
                                   std::to_string(timeout_seconds) + " seconds";
            report.diagnostics.push_back(std::move(timeout_diag));
        }
        return report;
    }
    if (proc.exit_code == 0) {
        report.status = verifier_status::verified;
        // Keep only informational leftovers; a verified run has no errors.
        report.diagnostics.clear();
        return report;
    }
    if (report.diagnostics.empty()) {
        report.status = verifier_status::crash_or_unusable;
        return report;
    }
    bool all_timeouts = std::all_of(
        report.diagnostics.begin(), report.diagnostics.end(),
        [](const diagnostic& d) { return d.kind == diagnostic_kind::timeout; });
    report.status = all_timeouts ? verifier_status::timeout : verifier_status::failed;
    return report;
}

// ---------------------------------------------------------------------------
// Scripted mock backend.

std::string scripted::program_digest(const std::string& program_text) {
    return fnv1a_hex(program_text);
}

void scripted::expect(const std::string& program_text, verifier_report report) {
    expect_digest(program_digest(program_text), std::move(report));
}

void scripted::expect_digest(const std::string& digest, verifier_report report) {
    _table[digest] = std::move(report);
}

verifier_report scripted::run(const std::string& program_text, int timeout_seconds) {
    (void)timeout_seconds;
    if (program_text.empty()) {
        throw usage_error("run_verifier: program text is empty");
    }
    _last_digest = program_digest(program_text);
    auto it = _table.find(_last_digest);
    if (it == _table.end()) {
        throw environment_error("scripted verifier has no verdict for program digest " +
                                _last_digest + " (" + std::to_string(program_text.size()) +
                                " bytes); refusing to guess");
    }
    return it->second;
}

std::vector<std::string> scripted::last_invocation() const {
    return {"scripted-mock", _last_digest};
}

namespace {

nlohmann::json report_to_json(const verifier_report& report) {
    nlohmann::json diags = nlohmann::json::array();
    for (const auto& diag : report.diagnostics) {
        diags.push_back({
            {"kind", to_string(diag.kind)},
            {"file", diag.file},
            {"line", diag.line},
            {"column", diag.column},
            {"message", diag.message},
        });
    }
    return {
        {"status", to_string(report.status)},
        {"diagnostics", std::move(diags)},
        {"wall_time_seconds", report.wall_time_seconds},
        {"raw_output", report.raw_output},
    };
}

verifier_report report_from_json(const nlohmann::json& doc) {
    verifier_report report;
    std::string status = doc.at("status").get<std::string>();
    if (status == "Verified") report.status = verifier_status::verified;
    else if (status == "Failed") report.status = verifier_status::failed;
    else if (status == "Timeout") report.status = verifier_status::timeout;
    else report.status = verifier_status::crash_or_unusable;
    for (const auto& diag_json : doc.at("diagnostics")) {
        diagnostic diag;
        diag.kind = diagnostic_kind_from_string(diag_json.at("kind").get<std::string>());
        diag.file = diag_json.value("file", "");
        diag.line = diag_json.value("line", -1);
        diag.column = diag_json.value("column", -1);
        diag.message = diag_json.value("message", "");
        report.diagnostics.push_back(std::move(diag));
    }
    report.wall_time_seconds = doc.value("wall_time_seconds", 0.0);
    report.raw_output = doc.value("raw_output", "");
    return report;
}

} // namespace

std::string scripted::to_json() const {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [digest, report] : _table) {
        nlohmann::json entry = {{"digest", digest}, {"report", report_to_json(report)}};
        entries.push_back(std::move(entry));
    }
    nlohmann::json doc = {{"verdicts", std::move(entries)}};
    return doc.dump(2) + "\n";
}

scripted scripted::from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw usage_error(std::string("verifier script JSON malformed: ") + e.what());
    }
    scripted table;
    for (const auto& entry : doc.at("verdicts")) {
        table.expect_digest(entry.at("digest").get<std::string>(),
                            report_from_json(entry.at("report")));
    }
    return table;
}

scripted scripted::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw usage_error("verifier script not found: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str());
}

void scripted::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) {
        throw usage_error("cannot write verifier script: " + path);
    }
    out << to_json();
}

verifier_report recording::run(const std::string& program_text, int timeout_seconds) {
    verifier_report report = _inner->run(program_text, timeout_seconds);
    _table.expect(program_text, report);
    return report;
}

std::string resolve_dafny_executable() {
    if (const char* env = std::getenv("PF_DAFNY_PATH"); env != nullptr && *env != '\0') {
        return env;
    }
    const char* path_env = std::getenv("PATH");
    if (path_env == nullptr) return "";
    std::istringstream paths(path_env);
    std::string dir;
    while (std::getline(paths, dir, ':')) {
        std::filesystem::path candidate = std::filesystem::path(dir) / "dafny";
        std::error_code ec;
        if (std::filesystem::exists(candidate, ec)) return candidate.string();
    }
    return "";
}

} // namespace proofforge::verifier
