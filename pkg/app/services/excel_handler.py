from openpyxl import Workbook
from openpyxl.styles import Font, PatternFill
from openpyxl.utils.dataframe import dataframe_to_rows
import pandas as pd

MAX_EXCEL_ROWS = 1048576

RED_STATUSES = ("violation",)
YELLOW_STATUSES = ("unwitnessed", "open-family", "unlisted")


def generate_styled_excel(df: pd.DataFrame, output_path: str, title: str = "Curves", status_col: str = "status"):
    """
    Writes the frame to a workbook. When a status column is present, rows with
    a violation are filled red and unwitnessed, open-family or unlisted rows
    yellow.
    """
    wb = Workbook()
    ws = wb.active
    ws.title = title[:31]

    yellow_fill = PatternFill(start_color="FFFF00", end_color="FFFF00", fill_type="solid")
    red_fill = PatternFill(start_color="FFCCCC", end_color="FFCCCC", fill_type="solid")

    headers = list(df.columns)
    ws.append(headers)
    for cell in ws[1]:
        cell.font = Font(bold=True)

    if len(df) > MAX_EXCEL_ROWS - 1:
        df = df.iloc[:MAX_EXCEL_ROWS - 1]

    status_idx = headers.index(status_col) + 1 if status_col in headers else None
    for r_idx, row in enumerate(dataframe_to_rows(df, index=False, header=False), start=2):
        ws.append(row)
        if status_idx is None:
            continue
        status = ws.cell(row=r_idx, column=status_idx).value
        if status in RED_STATUSES:
            fill = red_fill
        elif status in YELLOW_STATUSES:
            fill = yellow_fill
        else:
            continue
        for c_idx in range(1, len(headers) + 1):
            ws.cell(row=r_idx, column=c_idx).fill = fill

    wb.save(output_path)
    return output_path
