"""Reference values of the three alpha = 1 tables: (x, t, exact, hptm, abs_err).

Values are kept as strings so the last quoted digit is known.
"""

TABLE1 = [
    ("0.25", "0.25", "0.321006", "0.321004", "2.122401E-06"),
    ("0.25", "0.50", "0.412180", "0.412109", "7.094268E-05"),
    ("0.25", "0.75", "0.529250", "0.528686", "5.634807E-04"),
    ("0.25", "1.00", "0.679570", "0.677083", "2.487124E-03"),
    ("0.5", "0.25", "0.642012", "0.642008", "4.244802E-06"),
    ("0.5", "0.50", "0.824361", "0.824219", "1.418854E-04"),
    ("0.5", "0.75", "1.058500", "1.057373", "1.126961E-03"),
    ("0.5", "1.00", "1.359141", "1.354167", "4.974248E-03"),
    ("0.75", "0.25", "0.963019", "0.963012", "6.369688E-06"),
    ("0.75", "0.50", "1.236541", "1.236328", "2.128250E-04"),
    ("0.75", "0.75", "1.587750", "1.586060", "1.690020E-03"),
    ("0.75", "1.00", "2.038711", "2.031250", "7.461370E-03"),
]

TABLE2 = [
    ("0.25", "0.25", "0.0802516", "0.0802516", "7.812108E-10"),
    ("0.25", "0.50", "0.1030451", "0.1030450", "1.032903E-07"),
    ("0.25", "0.75", "0.1323125", "0.1323107", "1.824464E-06"),
    ("0.25", "1.00", "0.1698926", "0.1698785", "1.414206E-05"),
    ("0.50", "0.25", "0.3210064", "0.3210064", "3.124843E-09"),
    ("0.50", "0.50", "0.4121803", "0.4121799", "4.131611E-07"),
    ("0.50", "0.75", "0.5292500", "0.5292427", "7.297854E-06"),
    ("0.50", "1.00", "0.6795705", "0.6795139", "5.656823E-05"),
    ("0.75", "0.25", "0.7222643", "0.7222643", "7.030897E-09"),
    ("0.75", "0.50", "0.9274057", "0.9274048", "9.296126E-07"),
    ("0.75", "0.75", "1.1908130", "1.1907963", "1.642017E-05"),
    ("0.75", "1.00", "1.5290340", "1.5289062", "1.272785E-04"),
]

TABLE3 = [
    ("0.25", "0.25", "4.867505E-02", "4.867505E-02", "7.338727E-10"),
    ("0.25", "0.50", "3.790817E-02", "3.790826E-02", "9.114643E-08"),
    ("0.25", "0.75", "2.952291E-02", "2.952442E-02", "1.512146E-06"),
    ("0.25", "1.00", "2.299247E-02", "2.300347E-02", "1.100715E-05"),
    ("0.50", "0.25", "1.947002E-01", "1.947002E-01", "2.935491E-09"),
    ("0.50", "0.50", "1.516327E-01", "1.516330E-01", "3.645857E-07"),
    ("0.50", "0.75", "1.180916E-01", "1.180977E-01", "6.048582E-06"),
    ("0.50", "1.00", "9.196986E-02", "9.201389E-02", "4.402860E-05"),
    ("0.75", "0.25", "4.380754E-01", "4.380754E-01", "6.604854E-09"),
    ("0.75", "0.50", "3.411735E-01", "3.411743E-01", "8.203179E-07"),
    ("0.75", "0.75", "2.657062E-01", "2.657198E-01", "1.360931E-05"),
    ("0.75", "1.00", "2.069322E-01", "2.070313E-01", "9.906434E-05"),
]

# name -> (table rows, partial-sum order that reproduces them)
TABLES = {"ex1": (TABLE1, 4), "ex2": (TABLE2, 6), "ex3": (TABLE3, 6)}
