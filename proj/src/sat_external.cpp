#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "hyperbmc/error.hpp"
#include "hyperbmc/sat.hpp"

extern char** environ;

namespace hyperbmc {

namespace {

class TempFile {
 public:
  explicit TempFile(const char* tag) {
    const char* dir = std::getenv("TMPDIR");
    path_ = std::string(dir && *dir ? dir : "/tmp") + "/hyperbmc-" + tag + "-XXXXXX";
    fd_ = mkstemp(path_.data());
    if (fd_ < 0) throw BackendError("cannot create temporary file: " + std::string(std::strerror(errno)));
  }
  ~TempFile() {
    if (fd_ >= 0) close(fd_);
    unlink(path_.c_str());
  }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::string& path() const { return path_; }
  void write_all(const std::string& data) {
    std::size_t off = 0;
    while (off < data.size()) {
      const ssize_t n = ::write(fd_, data.data() + off, data.size() - off);
      if (n < 0) throw BackendError("cannot write temporary file");
      off += static_cast<std::size_t>(n);
    }
  }

 private:
  std::string path_;
  int fd_ = -1;
};

}  // namespace

ExternalSolver::ExternalSolver(std::vector<std::string> command) : command_(std::move(command)) {
  if (command_.empty()) throw BackendError("external solver command is empty");
}

std::string ExternalSolver::name() const {
  std::string s = "external:";
  for (std::size_t i = 0; i < command_.size(); ++i) s += (i ? " " : "") + command_[i];
  return s;
}

SatResult ExternalSolver::solve(const CnfInstance& cnf) {
  const auto start = std::chrono::steady_clock::now();
  TempFile input("in");
  input.write_all(export_dimacs(cnf));
  TempFile output("out");

  std::vector<std::string> args = command_;
  args.push_back(input.path());
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, output.path().c_str(), O_WRONLY | O_TRUNC, 0600);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  pid_t pid = 0;
  const int rc = posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) throw BackendError("cannot start '" + command_[0] + "': " + std::strerror(rc));
  int status = 0;
  while (waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) throw BackendError("waitpid failed");
  }
  if (!WIFEXITED(status)) throw BackendError("solver '" + command_[0] + "' terminated abnormally");
  const int code = WEXITSTATUS(status);
  if (code != 0 && code != 10 && code != 20)
    throw BackendError("solver '" + command_[0] + "' exited with status " + std::to_string(code));

  std::ifstream in(output.path());
  std::string line;
  int answer = -1;
  SatResult result;
  std::vector<bool> model(static_cast<std::size_t>(cnf.var_count) + 1, false);
  bool model_done = false;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      const std::string verdict = line.substr(2);
      if (verdict.rfind("SATISFIABLE", 0) == 0) answer = 1;
      else if (verdict.rfind("UNSATISFIABLE", 0) == 0) answer = 0;
      else throw BackendError("solver reported '" + line + "'");
    } else if (line.rfind("v ", 0) == 0 || line == "v") {
      std::istringstream ls(line.substr(1));
      long lit = 0;
      while (ls >> lit) {
        if (lit == 0) {
          model_done = true;
          break;
        }
        if (std::labs(lit) > cnf.var_count) throw BackendError("model literal out of range: " + std::to_string(lit));
        model[static_cast<std::size_t>(std::labs(lit))] = lit > 0;
      }
      if (!ls.eof() && !model_done) throw BackendError("malformed model line '" + line + "'");
    }
  }
  if (answer < 0) throw BackendError("solver output has no 's' line");
  if ((answer == 1 && code == 20) || (answer == 0 && code == 10))
    throw BackendError("solver exit status contradicts its answer");
  result.satisfiable = answer == 1;
  if (result.satisfiable) {
    if (!satisfies(cnf, model)) throw BackendError("solver returned a model that violates the clauses");
    result.model = std::move(model);
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::unique_ptr<SatBackend> make_backend(const std::string& spec) {
  if (spec.empty() || spec == "embedded") return std::make_unique<EmbeddedSolver>();
  const std::string prefix = "external:";
  if (spec.rfind(prefix, 0) == 0) {
    std::istringstream in(spec.substr(prefix.size()));
    std::vector<std::string> words;
    for (std::string w; in >> w;) words.push_back(w);
    if (words.empty()) throw BackendError("external backend needs a command");
    return std::make_unique<ExternalSolver>(std::move(words));
  }
  throw BackendError("unknown backend '" + spec + "' (expected 'embedded' or 'external:<command>')");
}

}  // namespace hyperbmc
