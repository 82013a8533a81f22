import pytest

from greenstream.datasets import (
    DatasetError,
    load_dataset,
    parse_arff,
    parse_csv,
)

ARFF_BASIC = """\
% weather toy data
@RELATION weather

@ATTRIBUTE outlook {sunny, overcast, rainy}
@ATTRIBUTE temperature NUMERIC
@ATTRIBUTE humidity REAL
@ATTRIBUTE play {no, yes}

@DATA
sunny, 85, 85.5, no
overcast, 83, 86, yes
rainy, 70, 9.6e1, yes
% trailing comment
rainy, 65, 1e-3, no
"""

CSV_BASIC = """\
outlook,temperature,humidity,play
sunny,85,85.5,no
overcast,83,86,yes
rainy,70,96,yes
rainy,65,0.001,no
"""


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


class TestArff:
    def test_basic_parse(self, tmp_path):
        ds = parse_arff(write(tmp_path, "w.arff", ARFF_BASIC))
        assert ds.relation == "weather"
        assert ds.schema.class_count == 2
        assert [a.kind for a in ds.schema.attributes] == [
            "nominal",
            "numeric",
            "numeric",
        ]
        assert len(ds.examples) == 4

    def test_nominal_values_become_indices(self, tmp_path):
        ds = parse_arff(write(tmp_path, "w.arff", ARFF_BASIC))
        # outlook domain order is declaration order: sunny=0, overcast=1, rainy=2
        assert [ex.values[0] for ex in ds.examples] == [0, 1, 2, 2]
        # class domain: no=0, yes=1
        assert [ex.label for ex in ds.examples] == [0, 1, 1, 0]

    def test_scientific_notation(self, tmp_path):
        ds = parse_arff(write(tmp_path, "w.arff", ARFF_BASIC))
        assert ds.examples[2].values[2] == pytest.approx(96.0)
        assert ds.examples[3].values[2] == pytest.approx(1e-3)

    def test_case_insensitive_keywords_and_quotes(self, tmp_path):
        text = (
            "@relation 'two words'\n"
            "@attribute 'a b' {x, y}\n"
            "@attribute c numeric\n"
            "@attribute k {p, q}\n"
            "@data\n"
            "x, 1, p\n"
        )
        ds = parse_arff(write(tmp_path, "q.arff", text))
        assert ds.relation == "two words"
        assert ds.schema.attributes[0].name == "a b"

    def test_undeclared_nominal_value_names_line(self, tmp_path):
        text = ARFF_BASIC + "foggy, 60, 50, yes\n"
        with pytest.raises(DatasetError, match="line 15.*foggy"):
            parse_arff(write(tmp_path, "bad.arff", text))

    def test_sparse_rows_rejected(self, tmp_path):
        text = ARFF_BASIC + "{0 sunny, 3 yes}\n"
        with pytest.raises(DatasetError, match="sparse"):
            parse_arff(write(tmp_path, "sparse.arff", text))

    def test_string_attributes_rejected(self, tmp_path):
        text = "@relation r\n@attribute note string\n@attribute k {a, b}\n@data\n"
        with pytest.raises(DatasetError, match="string"):
            parse_arff(write(tmp_path, "str.arff", text))

    def test_missing_data_section(self, tmp_path):
        text = "@relation r\n@attribute a numeric\n@attribute k {x, y}\n"
        with pytest.raises(DatasetError, match="@data"):
            parse_arff(write(tmp_path, "nodata.arff", text))

    def test_numeric_class_rejected(self, tmp_path):
        text = "@relation r\n@attribute a {x, y}\n@attribute k numeric\n@data\nx, 1\n"
        with pytest.raises(DatasetError, match="class attribute must be nominal"):
            parse_arff(write(tmp_path, "numcls.arff", text))

    def test_non_numeric_value_in_numeric_column(self, tmp_path):
        text = ARFF_BASIC + "sunny, hot, 50, yes\n"
        with pytest.raises(DatasetError, match="line 15.*'hot'"):
            parse_arff(write(tmp_path, "hot.arff", text))

    def test_arity_mismatch_names_line(self, tmp_path):
        text = ARFF_BASIC + "sunny, 85, no\n"
        with pytest.raises(DatasetError, match="line 15"):
            parse_arff(write(tmp_path, "short.arff", text))


class TestCsv:
    def test_basic_parse(self, tmp_path):
        ds = parse_csv(write(tmp_path, "w.csv", CSV_BASIC))
        assert ds.schema.class_count == 2
        assert [a.kind for a in ds.schema.attributes] == [
            "nominal",
            "numeric",
            "numeric",
        ]
        assert len(ds.examples) == 4

    def test_csv_nominal_domain_is_sorted_distinct(self, tmp_path):
        ds = parse_csv(write(tmp_path, "w.csv", CSV_BASIC))
        # overcast < rainy < sunny
        assert [ex.values[0] for ex in ds.examples] == [2, 0, 1, 1]

    def test_class_column_forced_nominal(self, tmp_path):
        text = "a,b,k\n1,2,0\n3,4,1\n5,6,0\n"
        ds = parse_csv(write(tmp_path, "n.csv", text))
        assert ds.schema.class_count == 2
        assert ds.schema.attributes[0].kind == "numeric"

    def test_custom_class_index(self, tmp_path):
        text = "k,a,b\nyes,1,2\nno,3,4\n"
        ds = parse_csv(write(tmp_path, "c.csv", text), class_index=0)
        assert ds.schema.class_count == 2
        assert [a.name for a in ds.schema.attributes] == ["a", "b"]

    def test_empty_file_rejected(self, tmp_path):
        with pytest.raises(DatasetError, match="empty"):
            parse_csv(write(tmp_path, "e.csv", ""))

    def test_ragged_row_names_line(self, tmp_path):
        text = "a,b,k\n1,2,x\n3,y\n"
        with pytest.raises(DatasetError, match="line 3"):
            parse_csv(write(tmp_path, "r.csv", text))


class TestEquivalence:
    def test_arff_and_csv_yield_same_examples(self, tmp_path):
        """The same table through both formats gives identical streams, up
        to nominal index assignment."""
        arff = parse_arff(write(tmp_path, "w.arff", ARFF_BASIC))
        csv_ds = parse_csv(write(tmp_path, "w.csv", CSV_BASIC))
        assert arff.schema.class_count == csv_ds.schema.class_count
        assert len(arff.examples) == len(csv_ds.examples)
        for a, c in zip(arff.examples, csv_ds.examples):
            # numeric columns and labels agree exactly (class domains happen
            # to sort identically: no < yes)
            assert a.values[1:] == pytest.approx(c.values[1:])
            assert a.label == c.label

    def test_streams_train_identically(self, tmp_path):
        from greenstream.hoeffding import HoeffdingTree

        arff = parse_arff(write(tmp_path, "w.arff", ARFF_BASIC))
        stream = arff.as_stream()
        model = HoeffdingTree(stream.schema)
        for ex in stream:
            model.train_on(ex.values, ex.label)
        assert model.total_weight == 4.0


class TestDispatch:
    def test_by_extension(self, tmp_path):
        assert load_dataset(write(tmp_path, "w.arff", ARFF_BASIC)).format == "arff"
        assert load_dataset(write(tmp_path, "w.csv", CSV_BASIC)).format == "csv"

    def test_unknown_extension(self, tmp_path):
        with pytest.raises(DatasetError, match="infer format"):
            load_dataset(write(tmp_path, "w.tsv", "a\tb\n"))
