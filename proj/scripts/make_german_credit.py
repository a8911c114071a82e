#!/usr/bin/env python3
"""Derive the 10-column German Credit table (Kaggle layout) from the UCI
Statlog German Credit data in its decoded-text form.

The decoded form ships with the `scorecardpy` source distribution as
scorecardpy/data/germancredit.csv:

    pip download scorecardpy --no-deps && tar xzf scorecardpy-*.tar.gz
    python3 scripts/make_german_credit.py \
        scorecardpy-*/scorecardpy/data/germancredit.csv data/german_credit.csv
"""
import csv
import sys

SEX = {
    "male : divorced/separated": "male",
    "female : divorced/separated/married": "female",
    "male : single": "male",
    "male : married/widowed": "male",
    "female : single": "female",
}
JOB = {
    "unemployed/ unskilled - non-resident": "0",
    "unskilled - resident": "1",
    "skilled employee / official": "2",
    "management/ self-employed/ highly qualified employee/ officer": "3",
}
HOUSING = {"own": "own", "rent": "rent", "for free": "free"}
SAVING = {
    "... < 100 DM": "little",
    "100 <= ... < 500 DM": "moderate",
    "500 <= ... < 1000 DM": "quite rich",
    "... >= 1000 DM": "rich",
    "unknown/ no savings account": "NA",
}
CHECKING = {
    "... < 0 DM": "little",
    "0 <= ... < 200 DM": "moderate",
    "... >= 200 DM / salary assignments for at least 1 year": "rich",
    "no checking account": "NA",
}
PURPOSE = {
    "car (new)": "car",
    "car (used)": "car",
    "furniture/equipment": "furniture/equipment",
    "radio/television": "radio/TV",
    "domestic appliances": "domestic appliances",
    "repairs": "repairs",
    "education": "education",
    "retraining": "education",
    "business": "business",
    "others": "vacation/others",
}
HEADER = ["Age", "Sex", "Job", "Housing", "Saving accounts", "Checking account",
          "Credit amount", "Duration", "Purpose", "Risk"]


def main(src, dst):
    with open(src, newline="") as fin, open(dst, "w", newline="") as fout:
        out = csv.writer(fout, lineterminator="\n")
        out.writerow(HEADER)
        for r in csv.DictReader(fin):
            out.writerow([
                r["age_in_years"],
                SEX[r["personal_status_and_sex"]],
                JOB[r["job"]],
                HOUSING[r["housing"]],
                SAVING[r["savings_account_and_bonds"]],
                CHECKING[r["status_of_existing_checking_account"]],
                r["credit_amount"],
                r["duration_in_month"],
                PURPOSE[r["purpose"]],
                r["creditability"],
            ])


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2])
