import pytest

from steptrace.parser import parse
from steptrace.source import FrontendError
from steptrace.validate import compile_source, validate_program

from conftest import corpus_programs


def kinds_of(source: str) -> list[str]:
    return [d.kind for d in validate_program(parse(source))]


MAIN_OK = "int main() {\n    return 0;\n}\n"


# One minimal reproduction per diagnostic kind.
BAD_PROGRAMS = [
    ("MissingMain", "int helper() {\n    return 1;\n}\n"),
    ("BadMainSignature", "int main(int x) {\n    return 0;\n}\n"),
    ("BadMainSignature", "void main() {\n}\n"),
    ("DuplicateFunction", "int f() {\n    return 1;\n}\nint f() {\n    return 2;\n}\n" + MAIN_OK),
    ("ContainerReturn", "vector<int> f() {\n    vector<int> v;\n    return v;\n}\n" + MAIN_OK),
    ("ContainerByValue", "int f(vector<int> v) {\n    return 0;\n}\n" + MAIN_OK),
    ("ScalarByRef", "int f(int& x) {\n    return x;\n}\n" + MAIN_OK),
    ("DuplicateVariable", "int main() {\n    int x = 1;\n    int x = 2;\n    return 0;\n}\n"),
    ("DuplicateVariable", "int f(int x) {\n    int x = 2;\n    return x;\n}\n" + MAIN_OK),
    ("UndefinedVariable", "int main() {\n    x = 1;\n    return 0;\n}\n"),
    ("TypeMismatch", "int main() {\n    int x = true;\n    return 0;\n}\n"),
    ("TypeMismatch", "int main() {\n    double d = 1.5;\n    int x = d;\n    return 0;\n}\n"),
    ("TypeMismatch", "int main() {\n    int x = 1 + true;\n    return 0;\n}\n"),
    ("TypeMismatch", "int main() {\n    double d = 1.0 % 2.0;\n    return 0;\n}\n"),
    ("ContainerInit", "int main() {\n    vector<int> v = 3;\n    return 0;\n}\n"),
    ("ContainerAssign", "int main() {\n    vector<int> v;\n    vector<int> w;\n    v = w;\n    return 0;\n}\n"),
    ("ConditionNotBool", "int main() {\n    if (1) {\n        return 1;\n    }\n    return 0;\n}\n"),
    ("ConditionNotBool", "int main() {\n    while (2 + 2) {\n    }\n    return 0;\n}\n"),
    ("ReturnTypeMismatch", "int f() {\n    return true;\n}\n" + MAIN_OK),
    ("MissingReturnValue", "int f() {\n    return;\n}\n" + MAIN_OK),
    ("MissingReturn", "int f(int x) {\n    if (x > 0) {\n        return 1;\n    }\n}\n" + MAIN_OK),
    ("UselessExpression", "int main() {\n    1 + 2;\n    return 0;\n}\n"),
    ("PrintContainer", "int main() {\n    vector<int> v;\n    cout << v;\n    return 0;\n}\n"),
    ("ReadBadType", "int main() {\n    bool b = false;\n    cin >> b;\n    return 0;\n}\n"),
    ("MisplacedEndl", "int main() {\n    int x = endl;\n    return 0;\n}\n"),
    ("MisplacedPair", "int main() {\n    int x = {1, 2};\n    return 0;\n}\n"),
    ("NotIndexable", "int main() {\n    int x = 1;\n    int y = x[0];\n    return 0;\n}\n"),
    ("NotIndexable", "int main() {\n    stack<int> s;\n    int y = s[0];\n    return 0;\n}\n"),
    ("NotAContainer", "int main() {\n    int x = 1;\n    x.push_back(2);\n    return 0;\n}\n"),
    ("UnknownMethod", "int main() {\n    vector<int> v;\n    v.push_front(1);\n    return 0;\n}\n"),
    ("ArityMismatch", "int main() {\n    vector<int> v;\n    v.push_back(1, 2);\n    return 0;\n}\n"),
    ("ArityMismatch", "int f(int x) {\n    return x;\n}\nint main() {\n    return f(1, 2);\n}\n"),
    ("InsertNeedsPair", "int main() {\n    map<int, int> m;\n    m.insert(3);\n    return 0;\n}\n"),
    ("UndefinedFunction", "int main() {\n    return g(1);\n}\n"),
    ("VoidInExpression", "void f() {\n}\nint main() {\n    int x = 1 + f();\n    return 0;\n}\n"),
    ("VoidInExpression", "int main() {\n    vector<int> v;\n    int x = v.push_back(2);\n    return 0;\n}\n"),
    ("CallToMain", "int main() {\n    return main();\n}\n"),
    ("RefArgNotVariable", "int f(vector<int>& v) {\n    return 0;\n}\nint main() {\n    vector<int> v;\n    int x = f(v[0]);\n    return 0;\n}\n"),
]


@pytest.mark.parametrize("kind,source", BAD_PROGRAMS,
                         ids=["%s_%d" % (k, i) for i, (k, _) in enumerate(BAD_PROGRAMS)])
def test_each_diagnostic_kind_fires(kind, source):
    assert kind in kinds_of(source)


def test_ref_arg_must_be_a_plain_variable():
    # indexing or literals cannot bind to a & parameter
    src = ("void f(vector<int>& v) {\n    v.push_back(1);\n}\n"
           "int main() {\n    vector<int> v;\n    f(v);\n    return 0;\n}\n")
    assert kinds_of(src) == []


def test_validator_collects_multiple_errors():
    src = "int main() {\n    x = 1;\n    y = 2;\n    1 + 2;\n    return 0;\n}\n"
    kinds = kinds_of(src)
    assert kinds.count("UndefinedVariable") == 2
    assert "UselessExpression" in kinds


def test_int_widens_to_double_but_not_back():
    assert kinds_of("int main() {\n    double d = 3;\n    d = 4;\n    return 0;\n}\n") == []
    assert "TypeMismatch" in kinds_of("int main() {\n    int x = 3.0;\n    return 0;\n}\n")


def test_mixed_arithmetic_and_comparisons_type_check():
    ok = ("int main() {\n"
          "    double d = 1 + 2.5;\n"
          "    bool b = d < 3;\n"
          "    bool c = b && (1 != 2);\n"
          "    string s = \"a\" + \"b\";\n"
          "    cout << b << c << s << endl;\n"
          "    return 0;\n}\n")
    assert kinds_of(ok) == []
    assert "TypeMismatch" in kinds_of(
        "int main() {\n    bool b = \"a\" < 1;\n    return 0;\n}\n")


def test_map_bracket_and_methods_type_check():
    ok = ("int main() {\n"
          "    map<int, int> m;\n"
          "    m[3] = 30;\n"
          "    m.insert({4, 40});\n"
          "    bool f = m.find(3);\n"
          "    int c = m.count(4);\n"
          "    m.erase(3);\n"
          "    cout << m[4] << f << c << endl;\n"
          "    return 0;\n}\n")
    assert kinds_of(ok) == []
    assert "TypeMismatch" in kinds_of(
        "int main() {\n    map<int, int> m;\n    m[true] = 1;\n    return 0;\n}\n")


def test_shadowing_in_nested_scope_is_allowed():
    src = ("int main() {\n"
           "    int x = 1;\n"
           "    {\n"
           "        int x = 2;\n"
           "        cout << x << endl;\n"
           "    }\n"
           "    return 0;\n}\n")
    assert kinds_of(src) == []


def test_loop_variable_scope_ends_with_the_loop():
    src = ("int main() {\n"
           "    for (int i = 0; i < 3; i++) {\n"
           "        cout << i << endl;\n"
           "    }\n"
           "    cout << i << endl;\n"
           "    return 0;\n}\n")
    assert "UndefinedVariable" in kinds_of(src)


def test_compile_source_raises_with_all_diagnostics():
    with pytest.raises(FrontendError) as exc:
        compile_source("int main() {\n    x = 1;\n    if (3) {\n    }\n    return 0;\n}\n")
    kinds = {d.kind for d in exc.value.diagnostics}
    assert kinds == {"UndefinedVariable", "ConditionNotBool"}
    rendered = exc.value.diagnostics[0].render()
    assert rendered.startswith("2:5: error[UndefinedVariable]:")


def test_corpus_validates_clean():
    for path in corpus_programs():
        program = parse(path.read_text(encoding="utf-8"))
        assert validate_program(program) == [], path.name
